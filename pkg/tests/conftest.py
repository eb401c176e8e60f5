import pytest

from patcalc.syntax.corpus import load_corpus
from patcalc.utils.constants import Constants


@pytest.fixture(scope="session")
def shipped_corpus():
    return load_corpus(Constants.defaultCorpusPath)


@pytest.fixture(scope="session")
def replication_corpus():
    return load_corpus(Constants.replicationCorpusPath)


@pytest.fixture
def config_home(tmp_path, monkeypatch):
    """Point the configuration directory at a scratch location"""
    home = tmp_path / "home"
    monkeypatch.setenv(Constants.configHomeVar, str(home))
    return home
