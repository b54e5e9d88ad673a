import time

import pytest

from levelforge.fixtures import fixture_corpus, fixture_table, train_overfit_model
from levelforge.reference import write_reference_corpus
from levelforge.tiles import default_tile_config


@pytest.fixture(scope="session")
def tile_config():
    return default_tile_config()


@pytest.fixture(scope="session")
def all_tiles(tile_config):
    return [tile_config.tile(c) for c in tile_config.alphabet]


@pytest.fixture(scope="session")
def fixture_split():
    return fixture_corpus()


@pytest.fixture(scope="session")
def synth8_table():
    return fixture_table()


@pytest.fixture(scope="session")
def overfit():
    """(model, history, split, table, train_seconds): the 2000-epoch overfit run."""
    t0 = time.monotonic()
    model, history, split, table = train_overfit_model()
    return model, history, split, table, time.monotonic() - t0


@pytest.fixture(scope="session")
def reference_corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("reference") / "corpus"
    write_reference_corpus(root, seed=0)
    return root
