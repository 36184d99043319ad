"""Time-varying word polarity over a rolling window of trading weeks.

For week t the trailing window (13 week anchors including t, roughly a
quarter) is split into five corpora by each week's price-change class:
vpos, pos, neutral, neg, vneg. A word's polarity at week t is

    P(x, t) = W(x, vpos)/sqrt(N_vpos) - W(x, vneg)/sqrt(N_vneg)
              + discount * (W(x, pos)/sqrt(N_pos) - W(x, neg)/sqrt(N_neg))

where W(x, c) is the TF-IDF of x in class c's pooled text (term frequency
over the pooled class tokens, smoothed IDF over the individual window
documents) and N_c is the class document count. An empty class contributes
zero. Positive scores mean the word tracks rising weeks.

Stacking a vocabulary's scores for weeks t, t-1, ... t-L+1 gives the
per-article feature matrix consumed by the extractor's lag attention.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Collection, Mapping, Sequence

import numpy as np

from .corpus import TokenizedDoc, Vocabulary
from .errors import DataError
from .weeks import POT_CLASSES, WeeklyLabel

SCORE_FORMAT = "%.12e"


@dataclass(frozen=True)
class ClassCorpus:
    label: str
    docs: tuple[TokenizedDoc, ...]

    @property
    def n_docs(self) -> int:
        return len(self.docs)


def _tfidf_from_counts(count: int, class_tokens: int, df: int, n_docs: int) -> float:
    # TF over the pooled class text, smoothed IDF over individual documents.
    if count == 0 or class_tokens == 0:
        return 0.0
    tf = count / class_tokens
    idf = math.log((1 + n_docs) / (1 + df)) + 1.0
    return tf * idf


def _doc_frequency(docs: Sequence[TokenizedDoc], word: str) -> int:
    return sum(1 for d in docs if word in d.tokens)


def tfidf(universe: Sequence[TokenizedDoc], pooled_class: ClassCorpus, word: str) -> float:
    """TF-IDF of `word` in the pooled text of one class.

    `universe` is the full window document set and defines the IDF; an empty
    class or absent word scores 0.
    """
    count = sum(d.tokens.count(word) for d in pooled_class.docs)
    class_tokens = sum(len(d.tokens) for d in pooled_class.docs)
    return _tfidf_from_counts(count, class_tokens, _doc_frequency(universe, word), len(universe))


def _normalized_weight(universe, corpus: ClassCorpus, word: str) -> float:
    if corpus.n_docs == 0:
        return 0.0
    return tfidf(universe, corpus, word) / math.sqrt(corpus.n_docs)


def tfidf_difference_ranking(
    pos: ClassCorpus, neg: ClassCorpus, universe: Sequence[TokenizedDoc]
) -> list[tuple[str, float]]:
    """Words of the two classes scored by normalized TF-IDF gap, descending.

    Positive scores lean toward the positive class. Ties break
    lexicographically, so the ranking is stable across runs.
    """
    if pos.n_docs == 0 or neg.n_docs == 0:
        raise DataError("tfidf_difference_ranking needs nonempty positive and negative classes")
    words: set[str] = set()
    for corpus in (pos, neg):
        for doc in corpus.docs:
            words.update(doc.tokens)
    scored = [
        (word, _normalized_weight(universe, pos, word) - _normalized_weight(universe, neg, word))
        for word in words
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored


def polarity_score(
    word: str, window_classes: Mapping[str, ClassCorpus], discount: float = 0.5
) -> float:
    """Polarity of `word` over one trailing window, split into the five classes.

    The IDF universe is the union of all class documents (neutral included).
    """
    universe: list[TokenizedDoc] = []
    for label in POT_CLASSES:
        corpus = window_classes.get(label)
        if corpus is not None:
            universe.extend(corpus.docs)
    empty = ClassCorpus(label="", docs=())

    def w(label: str) -> float:
        return _normalized_weight(universe, window_classes.get(label, empty), word)

    return w("vpos") - w("vneg") + discount * (w("pos") - w("neg"))


@dataclass
class WeeklyPolarityModel:
    """Per-week word polarity scores; words absent from the window score 0."""

    week: date
    scores: dict[str, float]

    def score(self, word: str) -> float:
        return self.scores.get(word, 0.0)


class _WindowCounts:
    """Rolling counts backing the weekly models: exact integer bookkeeping."""

    def __init__(self):
        self.n_docs = 0
        self.df: Counter[str] = Counter()
        self.class_counts: dict[str, Counter[str]] = {c: Counter() for c in POT_CLASSES}
        self.class_tokens: dict[str, int] = {c: 0 for c in POT_CLASSES}
        self.class_docs: dict[str, int] = {c: 0 for c in POT_CLASSES}

    def add_week(self, pot_class: str, docs: Sequence[TokenizedDoc]) -> None:
        self._apply(pot_class, docs, +1)

    def remove_week(self, pot_class: str, docs: Sequence[TokenizedDoc]) -> None:
        self._apply(pot_class, docs, -1)

    def _apply(self, pot_class: str, docs: Sequence[TokenizedDoc], sign: int) -> None:
        counts = self.class_counts[pot_class]
        for doc in docs:
            self.n_docs += sign
            self.class_docs[pot_class] += sign
            self.class_tokens[pot_class] += sign * len(doc.tokens)
            for word in set(doc.tokens):
                self.df[word] += sign
                if self.df[word] == 0:
                    del self.df[word]
            for word in doc.tokens:
                counts[word] += sign
                if counts[word] == 0:
                    del counts[word]

    def score(self, word: str, discount: float) -> float:
        df = self.df.get(word, 0)

        def term(label: str) -> float:
            n = self.class_docs[label]
            if n == 0:
                return 0.0
            w = _tfidf_from_counts(
                self.class_counts[label].get(word, 0), self.class_tokens[label], df, self.n_docs
            )
            return w / math.sqrt(n)

        return term("vpos") - term("vneg") + discount * (term("pos") - term("neg"))


@dataclass
class PolarityModelSet:
    """Weekly polarity models over an ordered anchor sequence."""

    anchors: tuple[date, ...]
    models: dict[date, WeeklyPolarityModel]
    window_weeks: int = 13
    discount: float = 0.5
    _pos: dict[date, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._pos = {a: i for i, a in enumerate(self.anchors)}

    def matrix(self, vocab: Vocabulary, anchor: date, n_lags: int) -> np.ndarray:
        """Vocab-by-lag score matrix: column l holds week (anchor - l) scores."""
        if anchor not in self._pos:
            raise DataError(f"no polarity model for week {anchor.isoformat()}")
        i = self._pos[anchor]
        if i - (n_lags - 1) < 0:
            missing = n_lags - 1 - i
            raise DataError(
                f"week {anchor.isoformat()} lacks {missing} trailing model(s) for {n_lags} lags"
            )
        out = np.empty((len(vocab), n_lags), dtype=np.float64)
        for lag in range(n_lags):
            model = self.models[self.anchors[i - lag]]
            for j, word in enumerate(vocab.words):
                out[j, lag] = model.score(word)
        return out

    def trajectory(
        self, word: str, start: date | None = None, end: date | None = None
    ) -> list[tuple[date, float]]:
        return [
            (a, self.models[a].score(word))
            for a in self.anchors
            if (start is None or a >= start) and (end is None or a <= end)
        ]

    def save(self, directory: str | Path) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for anchor in self.anchors:
            path = directory / f"{anchor.isoformat()}.tsv"
            model = self.models[anchor]
            with open(path, "w", encoding="utf-8") as fh:
                for word in sorted(model.scores):
                    fh.write(f"{word}\t{SCORE_FORMAT % model.scores[word]}\n")
            written.append(path)
        return written

    @classmethod
    def load(cls, directory: str | Path, window_weeks: int = 13, discount: float = 0.5):
        directory = Path(directory)
        paths = sorted(directory.glob("*.tsv"))
        if not paths:
            raise DataError(f"no polarity models found under {directory}")
        anchors = []
        models = {}
        for path in paths:
            anchor = date.fromisoformat(path.stem)
            scores = {}
            for line in path.read_text(encoding="utf-8").splitlines():
                word, value = line.split("\t")
                scores[word] = float(value)
            anchors.append(anchor)
            models[anchor] = WeeklyPolarityModel(week=anchor, scores=scores)
        return cls(
            anchors=tuple(anchors), models=models,
            window_weeks=window_weeks, discount=discount,
        )


def build_model_set(
    labels: Sequence[WeeklyLabel],
    docs_by_week: Mapping[date, Sequence[TokenizedDoc]],
    words: Collection[str],
    window_weeks: int = 13,
    discount: float = 0.5,
) -> PolarityModelSet:
    """Weekly models for every labeled week, via one rolling pass.

    Early weeks use however much history exists (the window simply has not
    filled yet). Scores are computed for `words` only.
    """
    ordered = sorted(labels, key=lambda lab: lab.week.anchor)
    word_list = sorted(set(words))
    counts = _WindowCounts()
    anchors: list[date] = []
    models: dict[date, WeeklyPolarityModel] = {}
    for i, lab in enumerate(ordered):
        anchor = lab.week.anchor
        counts.add_week(lab.pot_class, docs_by_week.get(anchor, ()))
        j = i - window_weeks
        if j >= 0:
            old = ordered[j]
            counts.remove_week(old.pot_class, docs_by_week.get(old.week.anchor, ()))
        scores = {}
        for word in word_list:
            value = counts.score(word, discount)
            if value != 0.0:
                scores[word] = value
        anchors.append(anchor)
        models[anchor] = WeeklyPolarityModel(week=anchor, scores=scores)
    return PolarityModelSet(
        anchors=tuple(anchors), models=models,
        window_weeks=window_weeks, discount=discount,
    )


def window_classes_at(
    labels: Sequence[WeeklyLabel],
    docs_by_week: Mapping[date, Sequence[TokenizedDoc]],
    index: int,
    window_weeks: int = 13,
) -> dict[str, ClassCorpus]:
    """The five window corpora for week `index` (direct, non-rolling form)."""
    ordered = sorted(labels, key=lambda lab: lab.week.anchor)
    lo = max(0, index - window_weeks + 1)
    grouped: dict[str, list[TokenizedDoc]] = {c: [] for c in POT_CLASSES}
    for lab in ordered[lo : index + 1]:
        grouped[lab.pot_class].extend(docs_by_week.get(lab.week.anchor, ()))
    return {c: ClassCorpus(label=c, docs=tuple(docs)) for c, docs in grouped.items()}


def write_trajectory_csv(
    rows: Sequence[tuple[date, float]], word: str, path: str | Path
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("anchor,word,score\n")
        for anchor, score in rows:
            fh.write(f"{anchor.isoformat()},{word},{SCORE_FORMAT % score}\n")
