"""Per-article sentiment extractor.

Architecture: a pluggable text encoder produces a dense article vector; the
article's week gets a vocab-by-lag polarity matrix, pooled over lags by a
small attention (softmax(v' tanh(W M)) weights, pooled vector M a); the
standardized pooled polarity vector is concatenated with the encoder output,
passed through one rectified dense layer, and read out by two softmax heads:
sentiment (negative/positive) and worthiness (irrelevant/relevant).

Training minimizes a masked multitask objective: for articles with a
worthiness label, lam * CE_sentiment + (1 - lam) * CE_worthiness; for the
rest, plain CE_sentiment (the worthiness loss is skipped entirely, so those
examples contribute exactly zero gradient to the worthiness head).

All gradients are hand-derived and checked against central finite
differences (see gradient_check). Everything is float64 and deterministic
under a fixed seed.
"""

from __future__ import annotations

import hashlib
import json
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import TokenizedDoc, Vocabulary
from .errors import DataError, NumericError
from .weeks import WeeklyLabel

PROB_FLOOR = 1e-12

MODEL_MAGIC = "newstrend-extractor 1"


def softmax(logits: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = logits - logits.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


class Encoder(ABC):
    """Text encoder contract: documents in, fixed-width vectors out.

    Parameters live in the owning model's parameter dict (prefixed "enc."),
    so a trainable encoder exposes init_params/backward; a frozen one returns
    empty dicts and the training loop simply has nothing of its to update.
    """

    dim: int

    @abstractmethod
    def init_params(self, rng: np.random.Generator) -> dict[str, np.ndarray]: ...

    @abstractmethod
    def forward(
        self, docs: Sequence[TokenizedDoc], params: Mapping[str, np.ndarray]
    ) -> tuple[np.ndarray, object]:
        """Returns (B x dim output, cache for backward)."""

    @abstractmethod
    def backward(
        self, cache: object, d_out: np.ndarray, params: Mapping[str, np.ndarray]
    ) -> dict[str, np.ndarray]: ...

    @abstractmethod
    def to_config(self) -> dict: ...


class ReferenceEncoder(Encoder):
    """Trainable averaged-embedding encoder: desk-scale stand-in for a large
    pretrained model behind the same interface.

    Token embeddings are pooled as sum / sqrt(n) (scale stays independent of
    document length and comparable to the standardized polarity features;
    a plain mean shrinks by 1/sqrt(n) and starves the text channel), then
    mapped through a tanh dense layer. Unknown tokens share one row; an
    empty document encodes the zero vector.
    """

    def __init__(self, vocab: Sequence[str], dim: int = 64, emb_dim: int = 64):
        self.vocab = tuple(vocab)
        self.dim = dim
        self.emb_dim = emb_dim
        self.index = {w: i + 1 for i, w in enumerate(self.vocab)}  # 0 = UNK

    @classmethod
    def frequency_vocab(cls, docs: Sequence[TokenizedDoc], size: int = 5000) -> tuple[str, ...]:
        counts = Counter()
        for doc in docs:
            counts.update(doc.tokens)
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return tuple(w for w, _ in ranked[:size])

    def init_params(self, rng: np.random.Generator) -> dict[str, np.ndarray]:
        k = 1.0 / np.sqrt(self.emb_dim)
        return {
            "emb": rng.uniform(-k, k, size=(len(self.vocab) + 1, self.emb_dim)),
            "w": rng.uniform(-k, k, size=(self.emb_dim, self.dim)),
            "b": np.zeros(self.dim),
        }

    def _token_ids(self, doc: TokenizedDoc) -> np.ndarray:
        return np.array([self.index.get(t, 0) for t in doc.tokens], dtype=np.int64)

    def forward(self, docs, params):
        emb = params["emb"]
        ids = [self._token_ids(d) for d in docs]
        xbar = np.zeros((len(docs), self.emb_dim))
        for i, row in enumerate(ids):
            if len(row):
                xbar[i] = emb[row].sum(axis=0) / np.sqrt(len(row))
        out = np.tanh(xbar @ params["w"] + params["b"])
        return out, (ids, xbar, out)

    def backward(self, cache, d_out, params):
        ids, xbar, out = cache
        dpre = d_out * (1.0 - out * out)
        demb = np.zeros_like(params["emb"])
        dxbar = dpre @ params["w"].T
        for i, row in enumerate(ids):
            if len(row):
                np.add.at(demb, row, dxbar[i] / np.sqrt(len(row)))
        return {"emb": demb, "w": xbar.T @ dpre, "b": dpre.sum(axis=0)}

    def to_config(self) -> dict:
        return {
            "kind": "reference",
            "vocab": list(self.vocab),
            "dim": self.dim,
            "emb_dim": self.emb_dim,
        }


def encoder_from_config(cfg: Mapping) -> Encoder:
    if cfg.get("kind") == "reference":
        return ReferenceEncoder(cfg["vocab"], dim=cfg["dim"], emb_dim=cfg["emb_dim"])
    raise DataError(f"unknown encoder kind {cfg.get('kind')!r}")


def pot_attention(
    m: np.ndarray, att_w: np.ndarray, att_v: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Attention over the lag columns of one polarity matrix.

    Weights a = softmax(att_v' tanh(att_w m)) form a probability simplex over
    the lags; the pooled vector is m a.
    """
    m = np.asarray(m, dtype=np.float64)
    v_size, _ = m.shape
    if att_w.shape != (v_size, v_size):
        raise ValueError(f"att_w must be {v_size}x{v_size}, got {att_w.shape}")
    if att_v.shape != (v_size,):
        raise ValueError(f"att_v must have length {v_size}, got {att_v.shape}")
    scores = att_v @ np.tanh(att_w @ m)
    a = softmax(scores)
    return a, m @ a


def multitask_loss(
    p_senti: np.ndarray,
    p_worth: np.ndarray,
    sentiment: int,
    worthiness: int | None,
    lam: float,
) -> tuple[float, dict]:
    """Masked multitask objective for one example.

    Labeled worthiness: lam * CE_senti + (1 - lam) * CE_worth; unlabeled:
    CE_senti alone (unscaled, so the sentiment gradient stays full-size).
    Probabilities are clamped at 1e-12 before the log; the breakdown flags
    when that fires.
    """
    ps = float(p_senti[sentiment])
    clamped = ps < PROB_FLOOR
    ce_senti = -np.log(max(ps, PROB_FLOOR))
    if worthiness is None:
        return float(ce_senti), {"ce_senti": float(ce_senti), "ce_worth": None, "clamped": clamped}
    pw = float(p_worth[worthiness])
    clamped = clamped or pw < PROB_FLOOR
    ce_worth = -np.log(max(pw, PROB_FLOOR))
    loss = lam * ce_senti + (1.0 - lam) * ce_worth
    return float(loss), {
        "ce_senti": float(ce_senti),
        "ce_worth": float(ce_worth),
        "clamped": clamped,
    }


@dataclass
class TrainingExample:
    doc: TokenizedDoc
    matrix: np.ndarray          # vocab x lags polarity matrix of the doc's week
    week: date
    sentiment: int              # 0 negative, 1 positive (the week's class)
    worthiness: int | None = None


class ExtractorModel:
    """Parameter container plus forward/backward passes.

    Parameter blocks: enc.* (encoder), att_w, att_v, dense_w, dense_b,
    senti_w, senti_b, worth_w, worth_b. pot_mu/pot_sigma are fixed
    standardization buffers, not trained.
    """

    def __init__(
        self,
        vocab: Vocabulary,
        encoder: Encoder,
        n_lags: int,
        hidden: int,
        lam: float,
        seed: int = 0,
    ):
        self.vocab = vocab
        self.encoder = encoder
        self.n_lags = n_lags
        self.hidden = hidden
        self.lam = lam
        v = len(vocab)
        d = encoder.dim
        rng = np.random.default_rng(seed)
        params: dict[str, np.ndarray] = {}
        for name, arr in encoder.init_params(rng).items():
            params[f"enc.{name}"] = arr
        # attention starts near pass-through: identity-plus-noise mixing,
        # zero gate (uniform lag weights)
        params["att_w"] = np.eye(v) + rng.normal(0.0, 0.01, size=(v, v))
        params["att_v"] = np.zeros(v)
        k = 1.0 / np.sqrt(d + v)
        params["dense_w"] = rng.uniform(-k, k, size=(d + v, hidden))
        params["dense_b"] = np.zeros(hidden)
        params["senti_w"] = np.zeros((hidden, 2))
        params["senti_b"] = np.zeros(2)
        params["worth_w"] = np.zeros((hidden, 2))
        params["worth_b"] = np.zeros(2)
        self.params = params
        self.pot_mu = np.zeros(v)
        self.pot_sigma = np.ones(v)

    def fit_pot_scaler(self, matrices: Sequence[np.ndarray]) -> None:
        """Standardization statistics for the pooled polarity vector.

        Computed under the initial uniform attention (the pooled vector is
        then the per-word lag mean), over the training matrices only.
        """
        pooled = np.stack([np.asarray(m, dtype=np.float64).mean(axis=1) for m in matrices])
        self.pot_mu = pooled.mean(axis=0)
        sigma = pooled.std(axis=0)
        sigma[sigma < 1e-12] = 1.0
        self.pot_sigma = sigma

    def forward(
        self, docs: Sequence[TokenizedDoc], matrices: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, dict]:
        """Batch forward. matrices has shape (B, V, L)."""
        p = self.params
        m = np.asarray(matrices, dtype=np.float64)
        if m.ndim != 3 or m.shape[1] != len(self.vocab) or m.shape[2] != self.n_lags:
            raise ValueError(
                f"matrices must be (B, {len(self.vocab)}, {self.n_lags}), got {m.shape}"
            )
        vcls, enc_cache = self.encoder.forward(docs, _sub(p, "enc."))
        z = np.einsum("uv,bvl->bul", p["att_w"], m)
        t = np.tanh(z)
        s = np.einsum("v,bvl->bl", p["att_v"], t)
        a = softmax(s, axis=1)
        vpot_raw = np.einsum("bvl,bl->bv", m, a)
        vpot = (vpot_raw - self.pot_mu) / self.pot_sigma
        u = np.concatenate([vcls, vpot], axis=1)
        q = u @ p["dense_w"] + p["dense_b"]
        r = np.maximum(q, 0.0)
        ps = softmax(r @ p["senti_w"] + p["senti_b"], axis=1)
        pw = softmax(r @ p["worth_w"] + p["worth_b"], axis=1)
        cache = {
            "docs": docs, "m": m, "t": t, "a": a, "vcls": vcls,
            "enc_cache": enc_cache, "u": u, "q": q, "r": r, "ps": ps, "pw": pw,
        }
        return ps, pw, cache

    def batch_loss(self, batch: Sequence[TrainingExample]) -> float:
        loss, _, _ = self._loss_forward(batch)
        return loss

    def _loss_forward(self, batch):
        docs = [ex.doc for ex in batch]
        mats = np.stack([ex.matrix for ex in batch])
        ps, pw, cache = self.forward(docs, mats)
        n = len(batch)
        total = 0.0
        clamped = False
        for i, ex in enumerate(batch):
            li, breakdown = multitask_loss(ps[i], pw[i], ex.sentiment, ex.worthiness, self.lam)
            total += li
            clamped = clamped or breakdown["clamped"]
        return total / n, cache, clamped

    def loss_and_grads(
        self, batch: Sequence[TrainingExample]
    ) -> tuple[float, dict[str, np.ndarray]]:
        loss, cache, _ = self._loss_forward(batch)
        p = self.params
        n = len(batch)
        ps, pw, r, q, u = cache["ps"], cache["pw"], cache["r"], cache["q"], cache["u"]
        m, t, a = cache["m"], cache["t"], cache["a"]

        ys = np.zeros_like(ps)
        cs = np.empty(n)
        yw = np.zeros_like(pw)
        cw = np.zeros(n)
        for i, ex in enumerate(batch):
            ys[i, ex.sentiment] = 1.0
            if ex.worthiness is None:
                cs[i] = 1.0
            else:
                cs[i] = self.lam
                yw[i, ex.worthiness] = 1.0
                cw[i] = 1.0 - self.lam
        dls = (ps - ys) * cs[:, None] / n
        dlw = (pw - yw) * cw[:, None] / n

        grads: dict[str, np.ndarray] = {}
        grads["senti_w"] = r.T @ dls
        grads["senti_b"] = dls.sum(axis=0)
        grads["worth_w"] = r.T @ dlw
        grads["worth_b"] = dlw.sum(axis=0)
        dr = dls @ p["senti_w"].T + dlw @ p["worth_w"].T
        dq = dr * (q > 0.0)
        grads["dense_w"] = u.T @ dq
        grads["dense_b"] = dq.sum(axis=0)
        du = dq @ p["dense_w"].T
        d = self.encoder.dim
        dvcls = du[:, :d]
        dvpot_raw = du[:, d:] / self.pot_sigma
        da = np.einsum("bvl,bv->bl", m, dvpot_raw)
        ds = a * (da - (a * da).sum(axis=1, keepdims=True))
        grads["att_v"] = np.einsum("bvl,bl->v", t, ds)
        dz = np.einsum("v,bl->bvl", p["att_v"], ds) * (1.0 - t * t)
        grads["att_w"] = np.einsum("bul,bvl->uv", dz, m)
        for name, g in self.encoder.backward(cache["enc_cache"], dvcls, _sub(p, "enc.")).items():
            grads[f"enc.{name}"] = g
        return loss, grads

    def sentiment_probs(self, docs, matrices) -> np.ndarray:
        ps, _, _ = self.forward(docs, matrices)
        return ps

    def copy_params(self) -> dict[str, np.ndarray]:
        return {k: v.copy() for k, v in self.params.items()}

    def set_params(self, params: Mapping[str, np.ndarray]) -> None:
        for k in self.params:
            self.params[k][...] = params[k]


def _sub(params: Mapping[str, np.ndarray], prefix: str) -> dict[str, np.ndarray]:
    return {k[len(prefix):]: v for k, v in params.items() if k.startswith(prefix)}


def sentiment_score(model: ExtractorModel, doc: TokenizedDoc, matrix: np.ndarray) -> float:
    """P(positive market sentiment) for one article, in [0, 1]."""
    ps = model.sentiment_probs([doc], np.asarray(matrix)[None, :, :])
    return float(ps[0, 1])


def gradient_check(
    model: ExtractorModel,
    example: TrainingExample,
    eps: float = 1e-5,
    corrupt_block: str | None = None,
    corrupt_amount: float = 0.05,
    detail: bool = False,
):
    """Max relative error of analytic gradients vs central finite differences.

    The error is |a - fd| / max(|a| + |fd|, 1e-3), so finite-difference noise
    on near-zero coordinates cannot dominate. `corrupt_block` additively
    perturbs one analytic block first (mutation-testing aid: a correct
    implementation scores < 1e-4 while a corrupted block scores > 1e-2).
    """
    batch = [example]
    _, grads = model.loss_and_grads(batch)
    if corrupt_block is not None:
        if corrupt_block not in grads:
            raise ValueError(f"unknown parameter block {corrupt_block!r}")
        grads[corrupt_block] = grads[corrupt_block] + corrupt_amount
    errors: dict[str, float] = {}
    for name, param in model.params.items():
        g = grads[name]
        worst = 0.0
        flat = param.reshape(-1)
        gflat = np.asarray(g).reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            lp = model.batch_loss(batch)
            flat[i] = orig - eps
            lm = model.batch_loss(batch)
            flat[i] = orig
            fd = (lp - lm) / (2.0 * eps)
            err = abs(gflat[i] - fd) / max(abs(gflat[i]) + abs(fd), 1e-3)
            if err > worst:
                worst = err
        errors[name] = worst
    max_error = max(errors.values())
    return (max_error, errors) if detail else max_error


@dataclass
class TrainSettings:
    dim: int = 64
    emb_dim: int = 64
    encoder_vocab: int = 5000
    hidden: int = 512
    lam: float = 0.5
    lr: float = 1e-3            # desk-scale default for the reference encoder
    batch_size: int = 32
    epochs: int = 8
    seed: int = 0
    dev_fraction: float = 0.1
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8


@dataclass
class TrainedExtractor:
    model: ExtractorModel
    train_weeks: tuple[date, ...]
    dev_weeks: tuple[date, ...]
    history: list[dict] = field(default_factory=list)


def split_dev_weeks(
    weeks: Sequence[date], dev_fraction: float, seed: int
) -> tuple[tuple[date, ...], tuple[date, ...]]:
    """Hold out whole weeks (never individual articles) for the dev set."""
    ordered = sorted(set(weeks))
    if len(ordered) < 2:
        raise DataError("need at least 2 distinct weeks to split off a dev set")
    n_dev = max(1, round(dev_fraction * len(ordered)))
    rng = np.random.default_rng([seed, 1])
    dev_idx = set(rng.choice(len(ordered), size=n_dev, replace=False).tolist())
    train = tuple(w for i, w in enumerate(ordered) if i not in dev_idx)
    dev = tuple(w for i, w in enumerate(ordered) if i in dev_idx)
    return train, dev


def select_extractor_weeks(
    labels: Sequence[WeeklyLabel],
    seed: int,
    max_weeks_per_class: int | None = None,
) -> tuple[date, ...]:
    """Weeks eligible for extractor training, optionally capped per class.

    The cap is a seeded without-replacement sample so capped selections stay
    spread over the whole period.
    """
    rng = np.random.default_rng([seed, 2])
    selected: list[date] = []
    for cls in ("positive", "negative"):
        anchors = sorted(l.week.anchor for l in labels if l.extractor_class == cls)
        if max_weeks_per_class is not None and len(anchors) > max_weeks_per_class:
            idx = sorted(rng.choice(len(anchors), size=max_weeks_per_class, replace=False).tolist())
            anchors = [anchors[i] for i in idx]
        selected.extend(anchors)
    return tuple(sorted(selected))


def _accuracy_on(model: ExtractorModel, examples: Sequence[TrainingExample], batch_size: int):
    hits_s = 0
    hits_w = 0
    n_w = 0
    loss_sum = 0.0
    for lo in range(0, len(examples), batch_size):
        chunk = examples[lo : lo + batch_size]
        docs = [ex.doc for ex in chunk]
        mats = np.stack([ex.matrix for ex in chunk])
        ps, pw, _ = model.forward(docs, mats)
        pred_s = ps.argmax(axis=1)
        pred_w = pw.argmax(axis=1)
        for i, ex in enumerate(chunk):
            hits_s += int(pred_s[i] == ex.sentiment)
            loss_sum += multitask_loss(ps[i], pw[i], ex.sentiment, ex.worthiness, model.lam)[0]
            if ex.worthiness is not None:
                n_w += 1
                hits_w += int(pred_w[i] == ex.worthiness)
    acc_s = hits_s / len(examples) if examples else float("nan")
    acc_w = hits_w / n_w if n_w else None
    mean_loss = loss_sum / len(examples) if examples else float("inf")
    return acc_s, acc_w, mean_loss


def train_extractor(
    examples: Sequence[TrainingExample],
    settings: TrainSettings,
    vocab: Vocabulary,
    encoder: Encoder | None = None,
) -> TrainedExtractor:
    """Mini-batch Adam training with whole-week dev holdout.

    `vocab` is the polarity vocabulary the example matrices were built
    against (rows of each matrix). Deterministic under a fixed seed and
    fixed example order; the returned model carries the parameters of the
    best dev-accuracy epoch.
    """
    if not examples:
        raise DataError("no training examples")
    train_weeks, dev_weeks = split_dev_weeks(
        [ex.week for ex in examples], settings.dev_fraction, settings.seed
    )
    dev_set = set(dev_weeks)
    train_ex = [ex for ex in examples if ex.week not in dev_set]
    dev_ex = [ex for ex in examples if ex.week in dev_set]
    for cls in (0, 1):
        if not any(ex.sentiment == cls for ex in train_ex):
            raise DataError(f"training data has no sentiment-class-{cls} examples")

    if encoder is None:
        enc_vocab = ReferenceEncoder.frequency_vocab(
            [ex.doc for ex in train_ex], settings.encoder_vocab
        )
        encoder = ReferenceEncoder(enc_vocab, dim=settings.dim, emb_dim=settings.emb_dim)
    n_lags = train_ex[0].matrix.shape[1]
    if train_ex[0].matrix.shape[0] != len(vocab):
        raise DataError(
            f"example matrices have {train_ex[0].matrix.shape[0]} rows "
            f"but the vocabulary has {len(vocab)} words"
        )
    model = ExtractorModel(
        vocab=vocab, encoder=encoder, n_lags=n_lags,
        hidden=settings.hidden, lam=settings.lam, seed=settings.seed,
    )
    model.fit_pot_scaler([ex.matrix for ex in train_ex])

    rng = np.random.default_rng([settings.seed, 3])
    adam_m = {k: np.zeros_like(v) for k, v in model.params.items()}
    adam_v = {k: np.zeros_like(v) for k, v in model.params.items()}
    step = 0
    # best by dev accuracy; accuracy ties broken by lower dev loss, so a
    # model that keeps gaining margin after accuracy saturates still wins
    best_key = (-1.0, -float("inf"))
    best_params = model.copy_params()
    history: list[dict] = []
    for epoch in range(1, settings.epochs + 1):
        order = rng.permutation(len(train_ex))
        epoch_loss = 0.0
        n_batches = 0
        for lo in range(0, len(order), settings.batch_size):
            batch = [train_ex[i] for i in order[lo : lo + settings.batch_size]]
            loss, grads = model.loss_and_grads(batch)
            if not np.isfinite(loss):
                raise NumericError(
                    f"training diverged: loss={loss} at epoch {epoch} batch {n_batches}"
                )
            step += 1
            b1, b2 = settings.adam_beta1, settings.adam_beta2
            for name, g in grads.items():
                adam_m[name] = b1 * adam_m[name] + (1 - b1) * g
                adam_v[name] = b2 * adam_v[name] + (1 - b2) * (g * g)
                mhat = adam_m[name] / (1 - b1 ** step)
                vhat = adam_v[name] / (1 - b2 ** step)
                model.params[name] -= settings.lr * mhat / (np.sqrt(vhat) + settings.adam_eps)
            epoch_loss += loss
            n_batches += 1
        acc_s, acc_w, dev_loss = _accuracy_on(model, dev_ex, settings.batch_size)
        history.append(
            {
                "epoch": epoch,
                "train_loss": epoch_loss / max(n_batches, 1),
                "dev_acc_senti": acc_s,
                "dev_acc_worth": acc_w,
            }
        )
        key = (acc_s, -dev_loss)
        if key > best_key:
            best_key = key
            best_params = model.copy_params()
    model.set_params(best_params)
    return TrainedExtractor(
        model=model, train_weeks=train_weeks, dev_weeks=dev_weeks, history=history
    )


def write_train_log(history: Sequence[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("epoch,train_loss,dev_acc_senti,dev_acc_worth\n")
        for row in history:
            worth = "" if row["dev_acc_worth"] is None else repr(row["dev_acc_worth"])
            fh.write(f"{row['epoch']},{row['train_loss']!r},{row['dev_acc_senti']!r},{worth}\n")


def _sha256_words(words: Sequence[str]) -> str:
    return hashlib.sha256("\n".join(words).encode("utf-8")).hexdigest()


def save_extractor(
    trained: TrainedExtractor, path: str | Path, config_echo: Mapping | None = None
) -> None:
    """Single-file model artifact: versioned header, config echo, vocabulary
    hashes, then raw little-endian float64 parameter arrays. Byte-identical
    for identical seeds and inputs."""
    model = trained.model
    names = sorted(model.params)
    arrays = [model.params[n] for n in names] + [model.pot_mu, model.pot_sigma]
    names = names + ["pot_mu", "pot_sigma"]
    header = {
        "magic": MODEL_MAGIC,
        "encoder": model.encoder.to_config(),
        "vocab": list(model.vocab.words),
        "vocab_sha256": _sha256_words(model.vocab.words),
        "n_lags": model.n_lags,
        "hidden": model.hidden,
        "lam": model.lam,
        "train_weeks": [d.isoformat() for d in trained.train_weeks],
        "dev_weeks": [d.isoformat() for d in trained.dev_weeks],
        "config_echo": dict(config_echo) if config_echo else {},
        "arrays": [{"name": n, "shape": list(a.shape)} for n, a in zip(names, arrays)],
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(f"{MODEL_MAGIC}\n{len(blob)}\n".encode("ascii"))
        fh.write(blob)
        for arr in arrays:
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_extractor(path: str | Path) -> TrainedExtractor:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read model file {path}: {exc}")
    try:
        first, rest = raw.split(b"\n", 1)
        if first.decode("ascii") != MODEL_MAGIC:
            raise ValueError("bad magic")
        size_line, rest = rest.split(b"\n", 1)
        header = json.loads(rest[: int(size_line)])
        body = rest[int(size_line):]
    except (ValueError, json.JSONDecodeError) as exc:
        raise DataError(f"model file {path} is corrupt: {exc}")
    encoder = encoder_from_config(header["encoder"])
    vocab = Vocabulary(words=tuple(header["vocab"]))
    model = ExtractorModel(
        vocab=vocab, encoder=encoder, n_lags=header["n_lags"],
        hidden=header["hidden"], lam=header["lam"], seed=0,
    )
    offset = 0
    loaded: dict[str, np.ndarray] = {}
    for spec in header["arrays"]:
        shape = tuple(spec["shape"])
        count = int(np.prod(shape)) if shape else 1
        arr = np.frombuffer(body, dtype="<f8", count=count, offset=offset).reshape(shape)
        loaded[spec["name"]] = arr.astype(np.float64)
        offset += count * 8
    model.pot_mu = loaded.pop("pot_mu")
    model.pot_sigma = loaded.pop("pot_sigma")
    model.set_params(loaded)
    return TrainedExtractor(
        model=model,
        train_weeks=tuple(date.fromisoformat(d) for d in header["train_weeks"]),
        dev_weeks=tuple(date.fromisoformat(d) for d in header["dev_weeks"]),
        history=[],
    )
