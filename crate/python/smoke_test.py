#!/usr/bin/env python3
"""Smoke test for the greenring_py extension module.

Build the module first:

    cargo build -p greenring-py            # or --release

The script locates the produced cdylib under target/, exposes it as an
importable `greenring_py` module, and exercises the main types and
operations against known values.
"""

import math
import shutil
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def locate_module() -> Path:
    candidates = [
        REPO_ROOT / "target" / profile / "libgreenring_py.so"
        for profile in ("release", "debug")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "greenring_py cdylib not found; run `cargo build -p greenring-py` first"
        )
    newest = max(built, key=lambda p: p.stat().st_mtime)
    staging = Path(__file__).resolve().parent / "_build"
    staging.mkdir(exist_ok=True)
    target = staging / "greenring_py.so"
    if not target.exists() or target.stat().st_mtime < newest.stat().st_mtime:
        shutil.copy2(newest, target)
    return staging


sys.path.insert(0, str(locate_module()))

import greenring_py as gr  # noqa: E402


def check(condition: bool, message: str) -> None:
    if not condition:
        sys.exit(f"FAIL: {message}")
    print(f"  ok: {message}")


def main() -> None:
    print("module-level helpers")
    check(gr.dickson_poly(1) == "1", "F_1 = 1")
    check(gr.dickson_poly(4) == "Z^3 - 2*Y*Z", "F_4 = Z^3 - 2YZ")
    check(abs(gr.q_eval(6, 3) - 2.0) < 1e-12, "q_3 = 2 at n = 6")
    check(abs(gr.q_eval(8, 8)) < 1e-10, "q_n vanishes")
    check(gr.phi_monomial(5, 4, 2) == (1, 1), "phi(y^4 z^2) = 1 at n = 5")
    check(
        gr.antipode_monomial(4, 0, 1) == {"y^3*F_2": 1},
        "S(z) = y^3 F_2 at n = 4",
    )
    legs = gr.delta_monomial(4, 0, 2)
    check(
        [name for name, _ in legs] == ["F_3", "y*F_1"]
        and all(abs(w - 1.0) < 1e-12 for _, w in legs),
        "Delta(z^2) legs at n = 4",
    )

    print("stable ring n = 4")
    r = gr.Ring("stable", 4)
    check(r.rank == 12 and len(r.labels()) == 12, "rank n(n-1) = 12")
    f2 = r.parse("F_2")
    f3 = r.parse("F_3")
    check((f2 * f2).coeffs() == {"F_3": 1, "y*F_1": 1}, "F_2^2 = F_3 + y F_1")
    check(str(f2 * f3) == "y*F_2", "F_2 F_3 = y F_2")
    check((f2 ** 2) == f2 * f2, "powers agree with products")
    check(r.parse("z^2") == r.monomial(0, 2), "parse and monomial expansion agree")
    check(
        r.monomial(0, 2).to_monomial_basis() == {"z^2": 1},
        "monomial basis round trip",
    )
    fpdims = r.fpdim()
    for idx, label in enumerate(r.labels()):
        j = int(label.rsplit("_", 1)[1])
        check_val = abs(fpdims[idx] - gr.q_eval(4, j)) < 1e-8
        if not check_val:
            sys.exit(f"FAIL: fpdim({label}) != q_{j}")
    print("  ok: fpdim matches q_eval on every basis element")
    check(abs(fpdims[4] - math.sqrt(2)) < 1e-9, "fpdim(F_2) = sqrt(2)")
    check(r.is_transitive(), "transitive fusion ring")
    check(r.nondegenerate(), "unit-coefficient form nondegenerate")
    sigma = r.involution()
    gram = r.gram()
    check(
        all(
            gram[i][j] == (1 if j == sigma[i] else 0)
            for i in range(r.rank)
            for j in range(r.rank)
        ),
        "Gram is the involution permutation matrix",
    )
    gl = r.verify_group_like()
    bf = r.verify_bifrobenius()
    check(gl["pass"] and not gl["violations"], "group-like axioms verified")
    check(bf["pass"] and len(bf["checks"]) == 10, "bi-Frobenius structure verified")

    print("Green and Grothendieck rings at n = m = 2")
    green = gr.Ring("radford", 2, 2)
    check(green.rank == 5, "Green ring rank n^2 + m - 1")
    check(str(green.parse("Z^2")) == "Z + Y*Z", "Z^2 reduces to Z + YZ")
    check(str(green.parse("X1") * green.parse("Z")) == "2*X1", "Z X1 = 2 X1")
    kernel = green.projective_kernel_basis()
    check(
        [str(e) for e in kernel] == ["Z", "Y*Z", "X1"],
        "projective kernel generators",
    )
    check(
        all(e.stable_projection().is_zero() for e in kernel),
        "kernel generators die in the stable ring",
    )
    check(
        str(green.parse("Z").grothendieck_projection()) == "1 + Y",
        "Z maps to 1 + Y in the Grothendieck ring",
    )
    groth = gr.Ring("grothendieck", 2, 2)
    check(str(groth.parse("X1") ** 2) == "2 + 2*Y", "X1^2 = 2 + 2Y")
    taft = gr.Ring("taft", 5)
    check(taft.rank == 25, "Taft Green ring rank n^2")

    print("error paths")
    try:
        gr.Ring("stable", 1)
        sys.exit("FAIL: n = 1 must be rejected")
    except ValueError:
        print("  ok: n = 1 rejected")
    try:
        green.parse("Q + 1")
        sys.exit("FAIL: unknown variable must be rejected")
    except ValueError:
        print("  ok: unknown variable rejected")

    print("OK: all smoke checks passed")


if __name__ == "__main__":
    main()
