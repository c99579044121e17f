import numpy as np
import pytest

from ridgekit.synth import CORPUS_SEEDS, synthetic_fingerprint


@pytest.fixture(scope="session")
def corpus():
    """The bundled 512x512 synthetic fingerprint corpus."""
    return [synthetic_fingerprint(seed=seed) for seed in CORPUS_SEEDS]


@pytest.fixture(scope="session")
def small_corpus():
    """Quick 128x128 variants for tests that do not need full frames."""
    return [synthetic_fingerprint(128, 128, seed=seed) for seed in CORPUS_SEEDS[:3]]


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
