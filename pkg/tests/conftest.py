import pytest

from tripoint.gallery import GALLERY, gallery_build


@pytest.fixture(scope="session")
def models():
    """Every gallery model, built once per test session."""
    return {name: gallery_build(name) for name in GALLERY}


@pytest.fixture(scope="session")
def segre_model(models):
    return models["segre"]
