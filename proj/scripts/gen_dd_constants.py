#!/usr/bin/env python3
"""Generates double-double constant tables for the extended-precision
gamma/exp/log kernel in src/detail/ddreal.hpp.

Each constant is emitted as a (hi, lo) pair of doubles with hi + lo equal
to the value to ~32 significant digits.  Rerun only if the table layout
changes; the values themselves are fixed mathematical constants.
"""

import mpmath as mp

mp.mp.dps = 50


def dd_pair(x):
    hi = float(x)
    lo = float(x - mp.mpf(hi))
    return hi, lo


def emit_pairs(name, values, out):
    out.append(f"inline constexpr double {name}[][2] = {{")
    for v in values:
        hi, lo = dd_pair(v)
        out.append(f"    {{{hi!r}, {lo!r}}},")
    out.append("};")
    out.append("")


def main():
    out = []
    out.append("#pragma once")
    out.append("")
    out.append("// Generated by scripts/gen_dd_constants.py; do not edit by hand.")
    out.append("")
    out.append("namespace koenigs::detail {")
    out.append("")

    # Maclaurin coefficients of 1/Gamma(x) = sum_{k>=1} a_k x^k.
    # 1/Gamma is entire; 48 terms give ~1e-35 truncation error for |x| <= 1.5.
    ncoef = 48
    taylor = mp.taylor(mp.rgamma, 0, ncoef)
    emit_pairs("kInvGammaTaylor", taylor[1 : ncoef + 1], out)

    emit_pairs("kLn2", [mp.log(2)], out)
    emit_pairs("kPi", [mp.pi], out)

    # exp Taylor 1/k! for k = 0..24 (|r| <= ln2/2 after range reduction).
    emit_pairs("kExpTaylor", [1 / mp.factorial(k) for k in range(25)], out)

    out.append("} // namespace koenigs::detail")
    out.append("")

    with open("src/detail/dd_constants.hpp", "w") as f:
        f.write("\n".join(out))


if __name__ == "__main__":
    main()
