import pytest

from tweetsent import corpus, synth


@pytest.fixture(scope="session")
def synth_csv_small(tmp_path_factory):
    """A 2,000-row synthetic corpus file shared by the fast tests."""
    path = tmp_path_factory.mktemp("data") / "tweets_small.csv"
    synth.write_csv(path, n_rows=2000, seed=11)
    return path


@pytest.fixture(scope="session")
def small_rows(synth_csv_small):
    return corpus.load_sentiment140(synth_csv_small)


@pytest.fixture(scope="session")
def small_split(small_rows):
    return corpus.sample_and_split(small_rows, 2000, seed=3)
