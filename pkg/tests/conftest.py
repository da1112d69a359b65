import pytest

from advicelens.analytics import extract_features
from advicelens.corpus import load_posts
from advicelens.embedding import EmbeddingConfig
from advicelens.lexicons import bundled_data_dir, load_lexicon_set


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicon_set()


@pytest.fixture(scope="session")
def fixture_posts_path():
    return bundled_data_dir() / "fixture_posts.jsonl"


@pytest.fixture(scope="session")
def fixture_posts(fixture_posts_path):
    return load_posts(fixture_posts_path)


@pytest.fixture(scope="session")
def fixture_rows(fixture_posts, lexicons):
    rows, _, _ = extract_features(fixture_posts, lexicons, EmbeddingConfig())
    return rows
