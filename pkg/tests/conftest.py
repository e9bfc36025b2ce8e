import pytest

from signforge.fixture import build_fixture_lexicon
from signforge.lexicon import serialize_lexicon


@pytest.fixture(scope="session")
def lexicon():
    return build_fixture_lexicon()


@pytest.fixture()
def lexicon_file(tmp_path, lexicon):
    path = tmp_path / "lexicon.xml"
    path.write_text(serialize_lexicon(lexicon), encoding="utf-8")
    return path
