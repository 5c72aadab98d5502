"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see them
live).  Criteria 1 and 6 are implemented exactly as stated and are expected
to fail at specific, well-understood points:

* criterion 1: the exact 99% saturation threshold of the fiber-mode scheme
  sits at d* = 0.2804..0.2825 depending on q, so the ratio at the final grid
  point d = 0.283 falls short of 0.99 by about 2e-4 (worst at q = 0.1);
  the companion d* bracket [0.25, 0.32] holds.
* criterion 6: at q = 0.9 the dark-port and direct informations cross at
  d = 0.3069 (direct starts from q**2 = 0.81, already close to q), so the
  three-way ordering fails on the grid points above the crossing.

Both facts were confirmed against 40-digit arithmetic and, for the QFI, an
independent brute-force diagonalization; the remaining criteria pass.
"""

import contextlib
import io
import math
import time

import numpy as np

from twosource import (
    QuadratureSpec,
    Scene,
    Scheme,
    SimConfig,
    cfi_direct,
    cfi_gaussian,
    cfi_zero,
    crb_report,
    decompose,
    default_grid,
    eigenvalue_gap,
    overlap,
    overlap_derivative,
    p_gaussian,
    p_zero,
    qfi,
    qfi_grid,
    qfi_minimum,
    ratio_threshold,
)
from twosource.cli import main

QS_FIVE = (0.1, 0.3, 0.5, 0.7, 0.9)
QS_FOUR = (0.1, 0.3, 0.7, 0.9)


def report(number: int, name: str, ok: bool, detail: str) -> str:
    line = f"ACCEPTANCE {number} ({name}): {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    return line


def test_criterion_1_saturation():
    t0 = time.perf_counter()
    failures = []
    thresholds = {}
    wide = np.geomspace(0.01, 0.6, 120)
    for q in QS_FIVE:
        ds = np.geomspace(0.01, 0.283, 50)
        ratios = np.array(
            [cfi_gaussian(Scene(q, float(d))) / qfi(Scene(q, float(d))) for d in ds]
        )
        if ratios.min() < 0.99:
            failures.append(
                f"q={q}: ratio {ratios.min():.6f} < 0.99 at d={float(ds[np.argmin(ratios)]):.4f}"
            )
        d_star = ratio_threshold(q, wide)
        thresholds[q] = d_star
        if not (0.25 <= d_star <= 0.32):
            failures.append(f"q={q}: d*={d_star:.4f} outside [0.25, 0.32]")
    elapsed = time.perf_counter() - t0
    detail = (
        f"{len(failures)} violations; thresholds "
        + ", ".join(f"q={q}: {v:.4f}" for q, v in thresholds.items())
        + f"; {elapsed:.1f}s"
    )
    ok = not failures and elapsed < 5.0
    line = report(1, "saturation ratio >= 0.99 up to d=0.283", ok, detail)
    assert elapsed < 5.0
    assert ok, line + " | " + "; ".join(failures)


def test_criterion_2_qfi_minimum_location():
    t0 = time.perf_counter()
    locations = {}
    for q in QS_FIVE:
        d_min, _ = qfi_minimum(q, 0.1, 5.0, n=201)
        locations[q] = d_min
    elapsed = time.perf_counter() - t0
    ok = all(1.5 <= v <= 2.5 for v in locations.values()) and elapsed < 5.0
    detail = ", ".join(f"q={q}: d={v:.4f}" for q, v in locations.items()) + f"; {elapsed:.1f}s"
    line = report(2, "QFI minimum near d=2", ok, detail)
    assert elapsed < 5.0
    assert ok, line


def test_criterion_3_qfi_monotone_in_brightness():
    t0 = time.perf_counter()
    ok = True
    for d in (0.5, 1.0, 2.0, 3.0):
        values = [qfi(Scene(q, d)) for q in QS_FOUR]
        ok = ok and all(a < b for a, b in zip(values, values[1:]))
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    line = report(3, "QFI increases with q", ok, f"d in (0.5, 1, 2, 3); {elapsed:.2f}s")
    assert elapsed < 1.0
    assert ok, line


def test_criterion_4_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    worst_at = None
    for q in QS_FIVE:
        for d in (0.2, 0.5, 1.0, 2.0, 3.0, 5.0):
            scene = Scene(q, d)
            analytic = qfi(scene)
            oracle = qfi_grid(scene, default_grid(scene, n=2048, fd_step=1e-4))
            rel = abs(analytic - oracle) / analytic
            if rel > worst:
                worst, worst_at = rel, (q, d)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 60.0
    detail = f"worst rel dev {worst:.2e} at (q,d)={worst_at}; {elapsed:.1f}s"
    line = report(4, "analytic QFI vs grid oracle", ok, detail)
    assert elapsed < 60.0
    assert ok, line


def test_criterion_5_small_separation_limits():
    t0 = time.perf_counter()
    quad = QuadratureSpec()
    worst = 0.0
    for q in QS_FOUR:
        scene = Scene(q, 1e-3)
        worst = max(
            worst,
            abs(cfi_gaussian(scene) - q),
            abs(cfi_zero(scene) - q),
            abs(cfi_direct(scene, quad) - q * q),
            abs(qfi(scene) - q),
        )
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-3 and elapsed < 5.0
    line = report(5, "small-d limits", ok, f"worst |deviation| {worst:.2e}; {elapsed:.1f}s")
    assert elapsed < 5.0
    assert ok, line


def test_criterion_6_dominance_and_ordering():
    t0 = time.perf_counter()
    quad = QuadratureSpec()
    ds = np.linspace(0.5 / 25, 0.5, 25)
    order_failures = []
    bound_failures = []
    for q in QS_FOUR:
        for d in ds:
            scene = Scene(q, float(d))
            g = cfi_gaussian(scene)
            z = cfi_zero(scene)
            dd = cfi_direct(scene, quad)
            top = qfi(scene)
            if not (g >= z >= dd):
                order_failures.append(f"(q={q}, d={d:.2f}): G={g:.4f} Z={z:.4f} D={dd:.4f}")
            if max(g, z, dd) > top + 1e-9:
                bound_failures.append(f"(q={q}, d={d:.2f})")
    elapsed = time.perf_counter() - t0
    ok = not order_failures and not bound_failures and elapsed < 10.0
    detail = (
        f"{len(order_failures)} ordering / {len(bound_failures)} bound violations; {elapsed:.1f}s"
    )
    if order_failures:
        detail += f"; first: {order_failures[0]}"
    line = report(6, "CFI_G >= CFI_Z >= CFI_D <= QFI on (0, 0.5]", ok, detail)
    assert elapsed < 10.0
    assert ok, line


def test_criterion_7_derivative_integrity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240)
    step = 1e-5
    worst = 0.0
    worst_label = ""
    for _ in range(20):
        q = float(rng.uniform(0.05, 0.95))
        d = float(rng.uniform(0.2, 4.5))

        def rel_err(analytic, fn):
            fd = (fn(d + step) - fn(d - step)) / (2.0 * step)
            return abs(fd - analytic) / max(abs(analytic), 1e-12)

        s = decompose(Scene(q, d))
        checks = {
            "overlap'": rel_err(overlap_derivative(d), overlap),
            "gap'": rel_err(s.d_gap, lambda t: eigenvalue_gap(Scene(q, t))),
            "P_G'": rel_err(
                -(q * d / 2.0) * math.exp(-d * d / 4.0),
                lambda t: p_gaussian(Scene(q, t)),
            ),
            "P_Z'": rel_err(
                -((q * d / 2.0) * math.exp(-d * d / 2.0))
                / (1.0 - (q / 2.0) * math.expm1(-d * d / 2.0)) ** 2,
                lambda t: p_zero(Scene(q, t)),
            ),
        }
        for field in ("lambda1", "lambda2", "a1", "b1", "a2", "b2"):
            checks[field + "'"] = rel_err(
                getattr(s, "d_" + field),
                lambda t, f=field: getattr(decompose(Scene(q, t)), f),
            )
        for label, err in checks.items():
            if err > worst:
                worst, worst_label = err, f"{label} at (q={q:.3f}, d={d:.3f})"
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 5.0
    detail = f"worst rel dev {worst:.2e} ({worst_label}); 20 draws; {elapsed:.1f}s"
    line = report(7, "analytic derivatives vs finite differences", ok, detail)
    assert elapsed < 5.0
    assert ok, line


def test_criterion_8_crb_attainment():
    t0 = time.perf_counter()
    failures = []
    summaries = []
    for scheme in (Scheme.DIRECT, Scheme.GAUSSIAN_MODE, Scheme.ZERO_PHOTON):
        for q, d in ((0.3, 1.0), (0.7, 2.0)):
            config = SimConfig(
                scheme=scheme, scene=Scene(q, d), n=100_000, trials=200, seed=20250
            )
            rep = crb_report(config)
            summaries.append(f"{scheme.value}(q={q},d={d}): {rep.variance_ratio:.3f}")
            if not (0.85 <= rep.variance_ratio <= 1.20):
                failures.append(
                    f"{scheme.value} (q={q}, d={d}): ratio {rep.variance_ratio:.4f}"
                )
            if rep.boundary_fraction >= 0.01:
                failures.append(
                    f"{scheme.value} (q={q}, d={d}): boundary {rep.boundary_fraction:.3f}"
                )
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 120.0
    detail = "; ".join(summaries) + f"; {elapsed:.1f}s"
    line = report(8, "variance x n x F in [0.85, 1.20]", ok, detail)
    assert elapsed < 120.0
    assert ok, line + " | " + "; ".join(failures)


def test_criterion_9_simulation_determinism(monkeypatch):
    t0 = time.perf_counter()
    argv = [
        "simulate", "--scheme", "gaussian", "--q", "0.3", "--d", "1.0",
        "--n", "100000", "--trials", "200", "--seed", "77", "--per-trial",
    ]

    def run():
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = main(list(argv))
        assert code == 0
        text = buffer.getvalue()
        assert text
        return text

    first = run()
    second = run()
    monkeypatch.setenv("TWOSOURCE_THREADS", "4")
    threaded = run()
    monkeypatch.delenv("TWOSOURCE_THREADS")
    elapsed = time.perf_counter() - t0
    ok = first == second == threaded and elapsed < 60.0
    line = report(
        9,
        "byte-identical simulate output",
        ok,
        f"{len(first)} bytes x 3 runs (serial, serial, 4 threads); {elapsed:.1f}s",
    )
    assert elapsed < 60.0
    assert ok, line
