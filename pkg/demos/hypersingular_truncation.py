#!/usr/bin/env python3
"""Why the hypersingular route needs its closed-form tail term.

The reconstruction integrates a second difference of the backprojection g
over an annulus eps < |y| < r_max.  The differenced terms g(x -+ y) decay
fast, but the undifferenced g(x) term does not: beyond r_max it contributes
exactly 2 pi g(x) / r_max.  Plain truncation therefore converges only like
1/r_max — doubling r_max halves the error — while adding the closed-form
tail back removes that entire first-order deficit at no extra cost.
"""

from vslice import GridSpec, Phantom, compare, invert_hypersingular, make_phantom, vslice_forward

SPEC = GridSpec(2, 128, 48, 64)
PHANTOM = Phantom(kind="bump", center=(0.3, -0.2, 0.93), width=0.7, equator_margin=0.25)


def main():
    print(__doc__)
    truth = make_phantom(PHANTOM, SPEC)
    F = vslice_forward(truth)

    print("plain truncation (tail_correction=False):")
    errors = []
    for r_max in (4.0, 8.0, 16.0):
        rep = compare(truth, invert_hypersingular(F, r_max=r_max, tail_correction=False))
        errors.append(rep.rel_l2_after_scale)
        print("  r_max %4.0f: after_scale %.4f  scalar %.4f"
              % (r_max, rep.rel_l2_after_scale, rep.best_fit_scalar))
    print("  error ratios per doubling: %.2f, %.2f  (1/r_max law predicts 2.0)"
          % (errors[0] / errors[1], errors[1] / errors[2]))
    print()

    print("with the closed-form tail term (the default):")
    rep = compare(truth, invert_hypersingular(F, r_max=4.0))
    print("  r_max    4: after_scale %.4f  scalar %.4f"
          % (rep.rel_l2_after_scale, rep.best_fit_scalar))
    print()
    print("The corrected run at r_max = 4 beats plain truncation at r_max = 16;")
    print("what remains is the genuinely decaying part of the tail plus grid error.")


if __name__ == "__main__":
    main()
