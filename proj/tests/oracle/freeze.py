"""Independent oracle for the frozen test values in tests/frozen.hpp.

Determinants come from sympy's Bareiss elimination on the explicit group
matrix (small cases) or from a plain-Python character-sum product that is
itself cross-checked against sympy on a random sample. Membership in A uses
sympy's divisor enumeration. Run: python3 tests/oracle/freeze.py > tests/frozen.hpp
"""
import itertools
import random
from collections import Counter

import sympy


def group_matrix_det(vals):
    n = len(vals)
    return int(sympy.Matrix(n, n, lambda g, h: vals[g ^ h]).det(method="bareiss"))


def char_product(vals):
    n = len(vals)
    out = 1
    for chi in range(n):
        out *= sum(v if bin(j & chi).count("1") % 2 == 0 else -v for j, v in enumerate(vals))
    return out


def tuples(n, alphabet):
    # mixed radix, coordinate 0 is the lowest digit
    size = 1 << n
    for idx in range(len(alphabet) ** size):
        t, rest = [], idx
        for _ in range(size):
            t.append(alphabet[rest % len(alphabet)])
            rest //= len(alphabet)
        yield idx, t


def sweep_summary(n, alphabet, det):
    counts, first = Counter(), {}
    for idx, t in tuples(n, alphabet):
        v = det(t)
        counts[v] += 1
        first.setdefault(v, idx)
    return [(v, counts[v], first[v]) for v in sorted(counts)]


def in_A(u):
    """Pair (k, l) with u = (8k-3)(8l+3): smallest positive 8k-3, else negative of least magnitude."""
    if u % 2 == 0:
        return None
    divs = sympy.divisors(abs(u))
    cands = sorted(d for d in divs) + sorted((-d for d in divs), reverse=True)
    for d in cands:
        if (d + 3) % 8 == 0 and (u // d - 3) % 8 == 0:
            return ((d + 3) // 8, (u // d - 3) // 8)
    return None


def main():
    rng = random.Random(20240611)
    for _ in range(40):
        t = [rng.randint(-5, 5) for _ in range(16)]
        assert group_matrix_det(t) == char_product(t)

    print("#pragma once")
    print("// Generated by tests/oracle/freeze.py. Do not edit by hand.")
    print("#include <cstdint>\n#include <string>\n#include <vector>\n")
    print("namespace frozen {\n")
    print("struct SweepRow { const char* value; std::uint64_t count; std::uint64_t first_index; };\n")

    def emit(name, rows):
        print(f"inline const std::vector<SweepRow> {name} = {{")
        for v, c, f in rows:
            print(f'    {{"{v}", {c}, {f}}},')
        print("};\n")

    emit("kSweepN2Unit", sweep_summary(2, [-1, 0, 1], group_matrix_det))
    emit("kSweepN3Unit", sweep_summary(3, [-1, 0, 1], char_product))
    emit("kSweepN4Binary", sweep_summary(4, [0, 1], char_product))
    emit("kSweepN2Range3", sweep_summary(2, list(range(-3, 4)), char_product))

    # Random rank-4 assignments with sympy determinants.
    print("struct DetCase { std::vector<std::int64_t> x; const char* det; };\n")
    print("inline const std::vector<DetCase> kMatrixDets = {")
    for n in (1, 2, 3, 4):
        for _ in range(6):
            t = [rng.randint(-20, 20) for _ in range(1 << n)]
            print("    {{" + ",".join(map(str, t)) + "}, \"" + str(group_matrix_det(t)) + "\"},")
    big = [rng.randint(-10**6, 10**6) for _ in range(16)]
    print("    {{" + ",".join(map(str, big)) + "}, \"" + str(group_matrix_det(big)) + "\"},")
    print("};\n")

    print("struct ACase { std::int64_t u; bool present; std::int64_t k; std::int64_t l; };\n")
    print("inline const std::vector<ACase> kASet = {")
    for u in [-1, 7, 15, -9, 55, -65, 23, 135, -33, -25, 9, -15, 105, 1155, -1001, 999999, 3**11, -(5**9), 7 * 11 * 13 * 17 * 19 * 23]:
        p = in_A(u)
        print(f"    {{{u}, {'true' if p else 'false'}, {p[0] if p else 0}, {p[1] if p else 0}}},")
    print("};\n")

    print("struct FactorCase { const char* n; std::vector<std::pair<const char*, unsigned>> factors; };\n")
    print("inline const std::vector<FactorCase> kFactorizations = {")
    for n in [3 * 3 * 5 * 7 * 7 * 7, 1000000007 * 998244353, 4294967291 * 4294967279, 2**61 - 1,
              (2**61 - 1) * 1000003, 341550071728321, 3825123056546413051 * 3, 18446744073709551557 * 4294967291,
              999999999989 * 999999999959 * 17]:
        f = sympy.factorint(n)
        items = ", ".join(f'{{"{p}", {e}}}' for p, e in sorted(f.items()))
        print(f'    {{"{n}", {{{items}}}}},')
    print("};\n")
    print("}  // namespace frozen")


if __name__ == "__main__":
    main()
