"""Reference values for the unit tests, evaluated at 30 significant digits.

Run `python3 tests/oracles/scalar_oracles.py` to regenerate; the C++ tests
embed the printed values.
"""
from mpmath import acosh, cosh, exp, log, mp, mpf, sinh, sqrt, tanh

mp.dps = 30

VALUES = {
    "cosh_1": cosh(1),
    "sinh_1": sinh(1),
    "inner_cosh1_cosh2": -cosh(1) * cosh(2) + sinh(1) * sinh(2),
    "exp_origin_beta4_time": 2 * cosh(1),
    "exp_origin_beta4_space": 2 * sinh(1),
    "modulus_norm_2_1_1": sqrt(abs(-4 + 1 + 1)),
    "distance_cosh1_cosh2": acosh(cosh(1) * cosh(2) - sinh(1) * sinh(2)),
    "sq_distance_cosh1_cosh2": -2 + 2 * cosh(1),
    "project_0_3_4_time": sqrt(1 + 9 + 16),
    "tanh_1": tanh(1),
    "tanh_half": tanh(mpf(1) / 2),
    "hyper_to_ball_cosh1": sinh(1) / (1 + cosh(1)),
    "fermi_dirac_same_point": 1 / (exp(-2) + 1),
    "d_arcosh_at_cosh1": 1 / sinh(1),
    "bce_perfect_clamped": -log(1 - mpf("1e-7")),
    "distortion_ratio_2_half": ((2**2 - 1) ** 2 + (mpf(1) / 4 - 1) ** 2) / 2,
}

if __name__ == "__main__":
    for name, value in VALUES.items():
        print(f"{name} = {mp.nstr(value, 20)}")
