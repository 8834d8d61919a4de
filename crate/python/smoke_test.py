"""Builds the extension module, imports it and checks a handful of values.

    python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def load_module():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "curvball-python", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libcurvball_py.so"
    dest = Path(tempfile.mkdtemp()) / "curvball.so"
    shutil.copy(lib, dest)
    sys.path.insert(0, str(dest.parent))
    import curvball

    return curvball


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b}"


def main():
    cb = load_module()

    e2, s2, h2 = cb.Space("euclidean", 2), cb.Space("spherical", 2), cb.Space("hyperbolic", 2)
    close(cb.Space("euclidean", 3).ball_volume(1.0), 4 * math.pi / 3, 1e-12)
    close(s2.ball_volume(1.0), 2.88836579751364014, 1e-12)
    close(h2.ball_volume(1.0), 3.41227626528490231, 1e-12)
    close(h2.ball_volume_inverse(3.41227626528490231), 1.0, 1e-9)
    close(h2.mu_solve(13, 0.3), 0.534938768948974294, 1e-10)

    x, y = s2.exp_origin([0.3, 0.0]), s2.exp_origin([0.0, 0.4])
    close(s2.distance(x, y), math.acos(math.cos(0.3) * math.cos(0.4)), 1e-12)
    rx = h2.reflect([1.0, 0.0, 0.0], 0.0, h2.exp_origin([0.5, 0.2]))
    close(h2.distance(rx, h2.exp_origin([-0.5, 0.2])), 0.0, 1e-7)

    close(cb.lens_area(1.0), 1.22836969860875685, 1e-14)
    close(cb.disk_intersection_area([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)], [1, 1, 1]), cb.reuleaux_area(1.0), 1e-12)

    est = e2.dual_volume([[0, 0], [1, 0]], 1.0, n_mc=200_000, seed=1)
    assert abs(est.value - 1.22836969860875685) < 4 * est.std_err, est
    assert e2.in_dual([[0, 0], [1, 0]], 1.0, [0.5, 0.0])

    tri = [[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]]
    _, r = e2.circumradius(tri)
    close(r, e2.jung_bound(1.0), 1e-9)
    assert h2.jung_bound(1.0) < h2.relaxed_jung_bound(1.0, k=1.0)

    threshold, f, g = h2.kp_bounds(13, 0.3, 0.6, k=1.0)
    assert threshold == 13
    close(f, 0.390367344187707350, 1e-9)
    close(g, 0.385168631564742859, 1e-9)
    rep = e2.verify_kp(6, 1.0, 1.0, n_mc=200_000, seed=7)
    assert rep.verdict == "verified", rep.verdict
    assert rep.p_below_g and rep.q_above_f

    lhs, mu, holds = cb.check_packing_spherical(2, 89, 0.1)
    assert holds and lhs < mu
    try:
        cb.check_packing_spherical(2, 1000, 0.5)
    except ValueError as err:
        assert "precondition" in str(err).lower() or "exceeds" in str(err)
    else:
        raise AssertionError("saturated packing should raise")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
