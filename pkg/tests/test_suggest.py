import pytest

from drinfeldlab.errors import GridTooCoarse
from drinfeldlab.suggest import suggest_config


def test_suggest_q3_sample():
    out = suggest_config(3, rank=2, kappa_poly=(1,), u_poly=(1,))
    assert out["m"] == 4 and out["e"] == 72
    assert out["torsion_valuations"] == [-9]


def test_suggest_q5_sample():
    out = suggest_config(5, rank=2, kappa_poly=(1,), u_poly=(1,))
    assert out["m"] == 4 and out["e"] == 600


def test_suggest_carlitz():
    out = suggest_config(3, rank=1)
    assert out["m"] == 2 and out["e"] == 18
    # the minimal legal grid already splits the torsion x^2 = -theta
    assert out["refinements"] == 0


def test_suggest_detects_wild_module():
    with pytest.raises(GridTooCoarse) as exc:
        suggest_config(5, rank=2, kappa_poly=(0, 1), u_poly=(1,))
    assert "wildly ramified" in str(exc.value)
