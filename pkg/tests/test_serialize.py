import json

import numpy as np
import pytest

from cyclic_lie import OmegaMatrix, ProductSpec, Sl2CyclicMetric, ValidationError, build_product, decompose
from cyclic_lie import serialize


def test_algebra_roundtrip_is_exact():
    rng = np.random.default_rng(40)
    spec = ProductSpec(r=1, omega=OmegaMatrix(rng.uniform(-2, 2, size=(1, 2))))
    mla = build_product(spec)
    text = serialize.dumps(serialize.algebra_to_dict(mla))
    back = serialize.algebra_from_dict(json.loads(text))
    np.testing.assert_array_equal(back.structure, mla.structure)
    np.testing.assert_array_equal(back.gram, mla.gram)


def test_awkward_floats_roundtrip():
    vals = [0.1, 1 / 3, np.nextafter(1.0, 2.0), 1e-300, -2.5e17]
    w = OmegaMatrix([vals])
    back = serialize.omega_from_dict(json.loads(serialize.dumps(serialize.omega_to_dict(w))))
    np.testing.assert_array_equal(back.entries, w.entries)


def test_product_spec_roundtrip():
    spec = ProductSpec(r=2, omega=OmegaMatrix([[1.0, -0.5]]), sl2_factors=[Sl2CyclicMetric(2.0, 1.0)])
    back = serialize.product_spec_from_dict(json.loads(serialize.dumps(serialize.product_spec_to_dict(spec))))
    assert back.r == 2 and back.sl2_factors == spec.sl2_factors
    np.testing.assert_array_equal(back.omega.entries, spec.omega.entries)


def test_decomposition_dict():
    d = decompose(build_product(ProductSpec(r=1, sl2_factors=[Sl2CyclicMetric(2.0, 1.0)])))
    out = serialize.decomposition_to_dict(d)
    assert out["r"] == 1 and out["omega"] is None
    assert out["sl2"][0]["mu"] == pytest.approx(2.0)
    assert np.asarray(out["basis"]).shape == (4, 4)


@pytest.mark.parametrize(
    "bad",
    [
        {},
        {"dim": "3", "brackets": []},
        {"dim": 2, "brackets": [{"i": 0, "j": 1}]},
        {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": [0, 1]}, {"i": 0, "j": 1, "coeffs": [0, 1]}]},
        {"dim": 2, "brackets": [{"i": 1, "j": 0, "coeffs": [0, 1]}]},
        {"dim": 2, "brackets": [], "gram": [[1, 0], [0, -1]]},
    ],
)
def test_bad_algebra_documents(bad):
    with pytest.raises(ValidationError):
        serialize.algebra_from_dict(bad)


def test_bad_omega_documents():
    with pytest.raises(ValidationError):
        serialize.omega_from_dict({"q": 1, "p": 3, "rows": [[1, 2]]})
    with pytest.raises(ValidationError):
        serialize.omega_from_dict({"q": 1, "p": 2, "rows": [["a", 2]]})


def test_dumps_rejects_nan():
    with pytest.raises(ValueError):
        serialize.dumps({"x": float("nan")})
