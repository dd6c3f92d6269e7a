import pytest

from nfpmerge.geometry import Contour, Piece


def rect(x0, y0, x1, y1):
    return Contour(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def square_piece(x0=0.0, y0=0.0, s=1.0, name=""):
    return Piece(rect(x0, y0, x0 + s, y0 + s), name=name)


def poly(*verts, holes=(), name=""):
    return Piece(Contour(tuple(verts)), tuple(Contour(tuple(h)) for h in holes), name=name)


@pytest.fixture
def unit_square():
    return square_piece()


@pytest.fixture
def ring_piece():
    return Piece(rect(0, 0, 3, 3), holes=(rect(1, 1, 2, 2),), name="ring")


@pytest.fixture
def l_shape():
    return poly((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), name="L")
