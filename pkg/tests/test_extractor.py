import math
from datetime import date, timedelta

import numpy as np
import pytest

from newstrend.corpus import Vocabulary
from newstrend.errors import DataError
from newstrend.extractor import (
    ExtractorModel, ReferenceEncoder, TrainSettings, TrainingExample,
    gradient_check, load_extractor, multitask_loss, pot_attention,
    save_extractor, select_extractor_weeks, sentiment_score, split_dev_weeks,
    train_extractor,
)

from conftest import make_doc


def tiny_model(v=6, n_lags=3, dim=5, emb_dim=6, hidden=8, lam=0.5, seed=0):
    enc_vocab = [f"t{i}" for i in range(12)]
    encoder = ReferenceEncoder(enc_vocab, dim=dim, emb_dim=emb_dim)
    vocab = Vocabulary(words=tuple(f"v{i}" for i in range(v)))
    return ExtractorModel(vocab=vocab, encoder=encoder, n_lags=n_lags,
                          hidden=hidden, lam=lam, seed=seed)


def tiny_example(model, rng, worthiness=None, sentiment=1):
    v, n_lags = len(model.vocab), model.n_lags
    tokens = [f"t{i}" for i in rng.integers(0, 14, size=rng.integers(2, 8))]  # some OOV
    doc = make_doc("d", tokens)
    matrix = rng.normal(0.0, 0.02, size=(v, n_lags))
    return TrainingExample(doc=doc, matrix=matrix, week=date(2020, 1, 6),
                           sentiment=sentiment, worthiness=worthiness)


class TestAttention:
    def test_single_lag_returns_the_column(self):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(4, 1))
        a, vpot = pot_attention(m, np.eye(4), rng.normal(size=4))
        assert a.shape == (1,)
        assert a[0] == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(vpot, m[:, 0], atol=1e-12)

    def test_zero_matrix_gives_uniform_weights(self):
        m = np.zeros((5, 4))
        a, vpot = pot_attention(m, np.random.default_rng(1).normal(size=(5, 5)),
                                np.random.default_rng(2).normal(size=5))
        assert np.allclose(a, 0.25, atol=1e-12)
        assert np.allclose(vpot, 0.0, atol=1e-12)

    def test_hand_evaluated_two_by_two(self):
        # W=I, v=[1,0], M=[[1,0],[0,1]]: frozen from direct softmax(tanh) evaluation
        m = np.array([[1.0, 0.0], [0.0, 1.0]])
        a, vpot = pot_attention(m, np.eye(2), np.array([1.0, 0.0]))
        assert a == pytest.approx([0.6816997421945262, 0.3183002578054738], abs=1e-12)
        assert vpot == pytest.approx([0.6816997421945262, 0.3183002578054738], abs=1e-12)

    def test_shape_mismatch_fatal(self):
        with pytest.raises(ValueError):
            pot_attention(np.zeros((3, 2)), np.zeros((2, 2)), np.zeros(3))
        with pytest.raises(ValueError):
            pot_attention(np.zeros((3, 2)), np.zeros((3, 3)), np.zeros(2))

    def test_weights_form_simplex_on_random_inputs(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            v = int(rng.integers(1, 8))
            lags = int(rng.integers(1, 6))
            m = rng.normal(0, rng.uniform(0.01, 3.0), size=(v, lags))
            a, vpot = pot_attention(m, rng.normal(size=(v, v)), rng.normal(size=v))
            assert abs(a.sum() - 1.0) < 1e-9
            assert (a > 0).all()
            assert np.allclose(vpot, m @ a, atol=1e-12)


class TestForward:
    def test_outputs_are_distributions(self):
        model = tiny_model()
        rng = np.random.default_rng(3)
        exs = [tiny_example(model, rng) for _ in range(4)]
        ps, pw, _ = model.forward([e.doc for e in exs], np.stack([e.matrix for e in exs]))
        assert np.allclose(ps.sum(axis=1), 1.0, atol=1e-9)
        assert np.allclose(pw.sum(axis=1), 1.0, atol=1e-9)

    def test_zero_heads_give_exactly_half(self):
        model = tiny_model()
        rng = np.random.default_rng(4)
        ex = tiny_example(model, rng)
        ps, pw, _ = model.forward([ex.doc], ex.matrix[None])
        assert ps[0].tolist() == [0.5, 0.5]
        assert pw[0].tolist() == [0.5, 0.5]

    def test_matches_independent_step_by_step_evaluation(self):
        model = tiny_model(seed=11)
        rng = np.random.default_rng(12)
        # give heads nonzero weights so the comparison is nontrivial
        model.params["senti_w"] = rng.normal(0, 0.5, size=model.params["senti_w"].shape)
        model.params["senti_b"] = rng.normal(0, 0.5, size=2)
        model.params["worth_w"] = rng.normal(0, 0.5, size=model.params["worth_w"].shape)
        model.pot_mu = rng.normal(0, 0.1, size=len(model.vocab))
        model.pot_sigma = rng.uniform(0.5, 2.0, size=len(model.vocab))
        ex = tiny_example(model, rng)
        ps, pw, _ = model.forward([ex.doc], ex.matrix[None])

        # independent chain: plain numpy, no model code
        p = model.params
        enc = model.encoder
        ids = [enc.index.get(t, 0) for t in ex.doc.tokens]
        pooled = p["enc.emb"][ids].sum(axis=0) / math.sqrt(len(ids))
        vcls = np.tanh(pooled @ p["enc.w"] + p["enc.b"])
        scores = p["att_v"] @ np.tanh(p["att_w"] @ ex.matrix)
        e = np.exp(scores - scores.max())
        a = e / e.sum()
        vpot = (ex.matrix @ a - model.pot_mu) / model.pot_sigma
        u = np.concatenate([vcls, vpot])
        r = np.maximum(u @ p["dense_w"] + p["dense_b"], 0.0)
        ls = r @ p["senti_w"] + p["senti_b"]
        lw = r @ p["worth_w"] + p["worth_b"]
        want_ps = np.exp(ls - ls.max()); want_ps /= want_ps.sum()
        want_pw = np.exp(lw - lw.max()); want_pw /= want_pw.sum()
        assert np.allclose(ps[0], want_ps, atol=1e-12)
        assert np.allclose(pw[0], want_pw, atol=1e-12)

    def test_empty_document_encodes(self):
        model = tiny_model()
        ex = TrainingExample(doc=make_doc("d", []), matrix=np.zeros((6, 3)),
                             week=date(2020, 1, 6), sentiment=0)
        ps, _, _ = model.forward([ex.doc], ex.matrix[None])
        assert np.isfinite(ps).all()

    def test_permutation_invariance(self):
        model = tiny_model(seed=5)
        rng = np.random.default_rng(6)
        model.params["att_v"] = rng.normal(size=len(model.vocab))
        model.params["senti_w"] = rng.normal(0, 0.3, size=model.params["senti_w"].shape)
        model.pot_mu = rng.normal(0, 0.1, size=len(model.vocab))
        model.pot_sigma = rng.uniform(0.5, 2.0, size=len(model.vocab))
        ex = tiny_example(model, rng)
        ps, pw, cache = model.forward([ex.doc], ex.matrix[None])

        perm = rng.permutation(len(model.vocab))
        permuted = tiny_model(seed=5)
        permuted.params["att_w"] = model.params["att_w"][np.ix_(perm, perm)]
        permuted.params["att_v"] = model.params["att_v"][perm]
        permuted.pot_mu = model.pot_mu[perm]
        permuted.pot_sigma = model.pot_sigma[perm]
        d = model.encoder.dim
        for name in ("dense_b", "senti_w", "senti_b", "worth_w", "worth_b"):
            permuted.params[name] = model.params[name].copy()
        for name in ("enc.emb", "enc.w", "enc.b"):
            permuted.params[name] = model.params[name].copy()
        dense = model.params["dense_w"].copy()
        dense[d:] = dense[d:][perm]
        permuted.params["dense_w"] = dense
        ps2, pw2, cache2 = permuted.forward([ex.doc], ex.matrix[perm][None])
        assert np.allclose(cache2["a"], cache["a"], atol=1e-12)
        assert np.allclose(ps2, ps, atol=1e-12)
        assert np.allclose(pw2, pw, atol=1e-12)


class TestMultitaskLoss:
    def test_lambda_one_collapses_to_sentiment(self):
        loss, breakdown = multitask_loss(
            np.array([0.2, 0.8]), np.array([0.6, 0.4]), 1, 0, lam=1.0
        )
        assert loss == pytest.approx(breakdown["ce_senti"])
        assert breakdown["ce_senti"] == pytest.approx(-math.log(0.8))

    def test_unlabeled_uniform_is_ln2(self):
        loss, breakdown = multitask_loss(
            np.array([0.5, 0.5]), np.array([0.9, 0.1]), 0, None, lam=0.5
        )
        assert loss == pytest.approx(math.log(2.0), abs=1e-12)
        assert breakdown["ce_worth"] is None

    def test_weighted_sum(self):
        loss, b = multitask_loss(np.array([0.3, 0.7]), np.array([0.6, 0.4]), 1, 1, lam=0.5)
        assert loss == pytest.approx(0.5 * -math.log(0.7) + 0.5 * -math.log(0.4))

    def test_zero_probability_clamped_and_flagged(self):
        loss, b = multitask_loss(np.array([1.0, 0.0]), np.array([0.5, 0.5]), 1, None, lam=0.5)
        assert b["clamped"]
        assert loss == pytest.approx(-math.log(1e-12))


class TestGradientCheck:
    def test_correct_gradients_across_seeds(self):
        worst = 0.0
        for seed in range(4):
            model = tiny_model(seed=seed)
            rng = np.random.default_rng(100 + seed)
            worth = [None, 0, 1][seed % 3]
            ex = tiny_example(model, rng, worthiness=worth, sentiment=seed % 2)
            err = gradient_check(model, ex)
            worst = max(worst, err)
        assert worst < 1e-4

    def test_corrupted_gradient_detected(self):
        model = tiny_model(seed=1)
        ex = tiny_example(model, np.random.default_rng(2), worthiness=1)
        assert gradient_check(model, ex, corrupt_block="att_w") > 1e-2

    def test_unknown_block_rejected(self):
        model = tiny_model()
        ex = tiny_example(model, np.random.default_rng(0))
        with pytest.raises(ValueError):
            gradient_check(model, ex, corrupt_block="nope")

    def test_masked_worthiness_gradients_exactly_zero(self):
        model = tiny_model(seed=2)
        # give worthiness head nonzero weights so flow *would* exist if unmasked
        rng = np.random.default_rng(3)
        model.params["worth_w"] = rng.normal(0, 0.3, size=model.params["worth_w"].shape)
        ex = tiny_example(model, rng, worthiness=None)
        _, grads = model.loss_and_grads([ex])
        assert np.all(grads["worth_w"] == 0.0)
        assert np.all(grads["worth_b"] == 0.0)
        labeled = tiny_example(model, rng, worthiness=1)
        _, grads2 = model.loss_and_grads([labeled])
        assert np.any(grads2["worth_w"] != 0.0)


def planted_training_set(n_weeks=10, docs_per_week=6, seed=0):
    """Linearly separable toy: positive weeks say gain/surge, negative fall/drop."""
    rng = np.random.default_rng(seed)
    monday = date(2020, 1, 6)
    vocab = Vocabulary(words=("gain", "fall", "w0", "w1"))
    examples = []
    for i in range(n_weeks):
        anchor = monday + timedelta(days=7 * i)
        sentiment = i % 2
        words = ("gain", "surge") if sentiment else ("fall", "drop")
        base = rng.normal(0, 0.005, size=(4, 2))
        base[0, :] += 0.02 if sentiment else -0.02
        base[1, :] += -0.02 if sentiment else 0.02
        for j in range(docs_per_week):
            tokens = list(rng.choice(["the", "market", "report", "week"], size=6))
            tokens += list(rng.choice(words, size=3))
            rng.shuffle(tokens)
            worthiness = int(rng.integers(0, 2)) if rng.random() < 0.3 else None
            examples.append(
                TrainingExample(doc=make_doc(f"d{i}-{j}", tokens), matrix=base,
                                week=anchor, sentiment=sentiment, worthiness=worthiness)
            )
    return vocab, examples


class TestTraining:
    settings = TrainSettings(dim=12, emb_dim=12, hidden=16, epochs=10,
                             batch_size=8, seed=0, lr=3e-3)

    def test_separable_classes_reach_dev_accuracy(self):
        vocab, examples = planted_training_set()
        trained = train_extractor(examples, self.settings, vocab)
        assert max(h["dev_acc_senti"] for h in trained.history) >= 0.95
        assert len(trained.history) == 10

    def test_same_seed_reproduces_parameters_exactly(self):
        vocab, examples = planted_training_set()
        a = train_extractor(examples, self.settings, vocab)
        b = train_extractor(examples, self.settings, vocab)
        assert a.train_weeks == b.train_weeks
        for name in a.model.params:
            assert np.array_equal(a.model.params[name], b.model.params[name])

    def test_lambda_zero_freezes_sentiment_head(self):
        vocab, examples = planted_training_set()
        labeled = [
            TrainingExample(doc=e.doc, matrix=e.matrix, week=e.week,
                            sentiment=e.sentiment, worthiness=e.sentiment)
            for e in examples
        ]
        settings = TrainSettings(dim=12, emb_dim=12, hidden=16, epochs=3,
                                 batch_size=8, seed=0, lam=0.0)
        trained = train_extractor(labeled, settings, vocab)
        assert np.all(trained.model.params["senti_w"] == 0.0)
        ps, _, _ = trained.model.forward([labeled[0].doc], labeled[0].matrix[None])
        assert ps[0].tolist() == [0.5, 0.5]

    def test_single_class_fatal(self):
        vocab, examples = planted_training_set()
        ones = [e for e in examples if e.sentiment == 1]
        with pytest.raises(DataError):
            train_extractor(ones, self.settings, vocab)

    def test_dev_split_holds_out_whole_weeks(self):
        weeks = [date(2020, 1, 6) + timedelta(days=7 * i) for i in range(20)]
        train, dev = split_dev_weeks(weeks, dev_fraction=0.1, seed=3)
        assert set(train) | set(dev) == set(weeks)
        assert not set(train) & set(dev)
        assert len(dev) == 2


class TestScoring:
    def test_untrained_score_is_half_and_complement(self):
        model = tiny_model()
        rng = np.random.default_rng(8)
        ex = tiny_example(model, rng)
        score = sentiment_score(model, ex.doc, ex.matrix)
        assert score == pytest.approx(0.5)
        ps, _, _ = model.forward([ex.doc], ex.matrix[None])
        assert score + ps[0, 0] == pytest.approx(1.0, abs=1e-9)

    def test_trained_model_scores_planted_docs(self):
        vocab, examples = planted_training_set()
        trained = train_extractor(
            examples, TrainSettings(dim=12, emb_dim=12, hidden=16, epochs=10,
                                    batch_size=8, seed=0, lr=3e-3), vocab
        )
        pos = [e for e in examples if e.sentiment == 1][0]
        neg = [e for e in examples if e.sentiment == 0][0]
        assert sentiment_score(trained.model, pos.doc, pos.matrix) > 0.9
        assert sentiment_score(trained.model, neg.doc, neg.matrix) < 0.1


class TestSelection:
    def test_cap_is_seeded_sample(self):
        from newstrend.weeks import TradingWeek, WeeklyLabel
        labels = []
        monday = date(2020, 1, 6)
        for i in range(30):
            wk = TradingWeek(anchor=monday + timedelta(days=7 * i),
                             prev_anchor=monday + timedelta(days=7 * (i - 1)),
                             pct_change=3.0 if i % 2 else -3.0)
            labels.append(WeeklyLabel(week=wk, extractor_class="positive" if i % 2 else "negative",
                                      pot_class="vpos", summarizer_class="up"))
        sel = select_extractor_weeks(labels, seed=0, max_weeks_per_class=5)
        assert len(sel) == 10
        again = select_extractor_weeks(labels, seed=0, max_weeks_per_class=5)
        assert sel == again
        uncapped = select_extractor_weeks(labels, seed=0)
        assert len(uncapped) == 30


class TestModelArtifact:
    def test_save_load_roundtrip_and_determinism(self, tmp_path):
        vocab, examples = planted_training_set()
        settings = TrainSettings(dim=12, emb_dim=12, hidden=16, epochs=3, batch_size=8, seed=0)
        trained = train_extractor(examples, settings, vocab)
        p1, p2 = tmp_path / "m1.model", tmp_path / "m2.model"
        save_extractor(trained, p1, config_echo={"extractor.seed": 0})
        save_extractor(trained, p2, config_echo={"extractor.seed": 0})
        assert p1.read_bytes() == p2.read_bytes()

        loaded = load_extractor(p1)
        assert loaded.train_weeks == trained.train_weeks
        assert loaded.dev_weeks == trained.dev_weeks
        for name in trained.model.params:
            assert np.array_equal(loaded.model.params[name], trained.model.params[name])
        ex = examples[0]
        assert sentiment_score(loaded.model, ex.doc, ex.matrix) == pytest.approx(
            sentiment_score(trained.model, ex.doc, ex.matrix), abs=1e-12
        )

    def test_corrupt_file_rejected(self, tmp_path):
        path = tmp_path / "bad.model"
        path.write_bytes(b"not a model")
        with pytest.raises(DataError):
            load_extractor(path)
