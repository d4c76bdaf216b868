#!/usr/bin/env python3
"""Reproduce the complexity-exponent and security-parameter tables.

Prints the minimized 2^(.)n exponents for both solver settings across the
usual matrix-multiplication exponents, the security parameter table, and the
baseline attack comparison at n = m = 256.
"""

from mqsolve.estimator import (
    ComplexityProfile,
    baseline_costs,
    minimize_exponent,
    quantum_security_bits,
    security_parameters,
)


def main():
    print("minimized exponents (alpha = 1, deterministic variant pays theta):")
    print(f"{'setting':<10} {'theta':>6} {'gamma*':>8} {'exponent':>9}")
    for setting in ("classical", "quantum"):
        for theta in (3.0, 2.376, 2.0):
            res = minimize_exponent(ComplexityProfile(theta=theta, variant="deterministic",
                                                      setting=setting))
            print(f"{setting:<10} {theta:>6} {res.gamma_star:>8.4f} {res.exponent:>9.4f}")

    print("\nLas-Vegas variants (cost factor 2 instead of theta):")
    for setting in ("classical", "quantum"):
        res = minimize_exponent(ComplexityProfile(theta=2.0, variant="las-vegas",
                                                  setting=setting))
        print(f"{setting:<10} {'-':>6} {res.gamma_star:>8.4f} {res.exponent:>9.4f}")

    print("\nsecurity parameters (quantum level -> minimal n, public key):")
    for bits in (64, 80, 128, 256):
        row = security_parameters(bits)
        print(f"  {bits:>4} bits -> n = {row.n:>4}, key = {row.key_size_label()}")

    print("\nre-evaluating an n = m = 256 instance:", quantum_security_bits(256), "bits")

    print("\nlog2 attack costs at n = m = 256:")
    for name, value in sorted(baseline_costs(256, 256).items(), key=lambda kv: kv[1]):
        print(f"  {name:<22} {value:>8.1f}")


if __name__ == "__main__":
    main()
