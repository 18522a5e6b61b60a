"""Smoke test for the pysovlab extension.

Build first with `cargo build --release -p pysovlab`; the script loads the
shared library from target/ unless `pysovlab` is already importable.
"""

import importlib.util
import pathlib
import sys
from fractions import Fraction


def load():
    try:
        import pysovlab

        return pysovlab
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[1] / "target"
    for profile in ("release", "debug"):
        lib = root / profile / "libpysovlab.so"
        if lib.exists():
            spec = importlib.util.spec_from_file_location("pysovlab", lib)
            mod = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(mod)
            return mod
    sys.exit("pysovlab not built: run `cargo build --release -p pysovlab`")


def main():
    sv = load()

    assert sv.weyl_dim([2, 1, 0]) == 8
    assert len(sv.gt_patterns([2, 1, 0])) == 8

    t1 = sv.ChainSpec.preset("t1")
    assert t1.n == 3 and t1.hilbert_dim() == 64 and t1.b_degree() == 6

    t0 = sv.ChainSpec.preset("t0")
    assert sv.ChainSpec.from_json(t0.to_json()).to_json() == t0.to_json()
    spec = sv.ChainSpec([[1, 0]], ["0"], z=["2", "3"], w=["7"])
    assert spec.to_json() == t0.to_json()

    try:
        sv.ChainSpec([[1, 0], [1, 0]], ["0", "1"])
    except ValueError:
        pass
    else:
        raise AssertionError("theta on the lattice must be rejected")

    # B(u) on the one-site chain: w (u - x) with x = theta + hbar*mu
    spectrum = sv.ChainSpec.preset("t0").b_spectrum()
    roots = sorted(-Fraction(c[0]) / Fraction(c[1]) for _, c in spectrum)
    assert roots == [Fraction(0), Fraction(1)], roots

    states = t0.bethe_states(precision=40, seed=1)
    assert len(states) == 2
    degrees = sorted(tuple(q["degree"] for q in s["q"]) for s in states)
    assert degrees == [(0, 1), (1, 0)], degrees

    cfg = sv.RunConfig.from_spec(t0, suites=["gt", "sov", "bethe"])
    assert cfg.suites == ["gt", "sov", "bethe"]
    assert "Hilbert dimension: 2" in cfg.describe()
    report = cfg.run()
    assert report["schema"] == "sovlab.report/1" and report["passed"], report
    assert [s["suite"] for s in report["suites"]] == ["gt", "sov", "bethe"]

    print("pysovlab smoke test passed")


if __name__ == "__main__":
    main()
