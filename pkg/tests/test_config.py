import json

import pytest

from newstrend.config import PipelineConfig, load_config
from newstrend.errors import ConfigError


class TestDefaults:
    def test_reference_hyperparameters(self):
        config = PipelineConfig()
        assert config.polarity.vocab_size == 512
        assert config.polarity.n_lags == 4
        assert config.polarity.discount == 0.5
        assert config.extractor.lam == 0.5
        assert config.extractor.batch_size == 32
        assert config.tokenizer.max_tokens == 180
        assert config.summarizer.n_sample == 100
        assert config.summarizer.train_weeks == 250
        assert config.labels.policy == "three_way"

    def test_learning_rate_auto(self):
        config = PipelineConfig()
        assert config.effective_lr() == 1e-3        # shallow reference encoder
        config.extractor.encoder = "external"
        assert config.effective_lr() == 2e-5        # deep-encoder default
        config.extractor.lr = 7e-4
        assert config.effective_lr() == 7e-4


class TestFlatKeys:
    def test_roundtrip(self):
        config = PipelineConfig()
        flat = config.to_flat()
        assert flat["polarity.vocab_size"] == 512
        assert flat["paths.workdir"] == "work"
        other = PipelineConfig()
        for key, value in flat.items():
            other.set_flat(key, value)
        assert other.to_flat() == flat

    def test_unknown_key_rejected(self):
        config = PipelineConfig()
        with pytest.raises(ConfigError):
            config.set_flat("polarity.nope", 1)
        with pytest.raises(ConfigError):
            config.set_flat("nosection.x", 1)
        with pytest.raises(ConfigError):
            config.set_flat("plainkey", 1)


class TestLoading:
    def test_file_then_overrides(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"polarity.vocab_size": 128, "synth.rho": 0.5}))
        config = load_config(path, ["polarity.vocab_size=64", "labels.policy=binary_asymmetric"])
        assert config.polarity.vocab_size == 64
        assert config.synth.rho == 0.5
        assert config.labels.policy == "binary_asymmetric"

    def test_bad_json_fatal(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{broken")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_bad_override_fatal(self):
        with pytest.raises(ConfigError):
            load_config(None, ["no-equals-sign"])
