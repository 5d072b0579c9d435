"""Per-weight dimensions of HH^n(U(h)) counted from explicit bases.

Standalone: imports nothing from the package. Weights are wt x1 = wt x2 = 1,
wt x3 = 2 and wt l_i = -wt x_i, so a class l^M (x) x^N x3^j sits at
-|M| + n1 + n2 + 2j.

Bases counted (Z = k[x3]):
  HH^0: Z.
  HH^1: free Z-module on l1(x)x2^n, l2(x)x1^n, l1(x)x1 - l3(x)x3, plus the
        x3-torsion part on l1(x)x^{N+(1,0)}/(n1+1) - l2(x)x^{N+(0,1)}/(n2+1).
  HH^2: free Z/(x3^2)-module on l2l3(x)x1^l, l3l1(x)x2^m and
        l2l3(x)x^{N+(0,1)}/(n2+1) + l3l1(x)x^{N+(1,0)}/(n1+1).
  HH^3: l1l2l3 (x) k[x1, x2].
"""


def _free_over_z(generator_weights, w, x3_power_bound=None):
    count = 0
    for g in generator_weights:
        d = w - g
        if d < 0 or d % 2:
            continue
        j = d // 2
        if x3_power_bound is None or j < x3_power_bound:
            count += 1
    return count


def _pairs_summing_to(s):
    return [(a, s - a) for a in range(s + 1)] if s >= 0 else []


def hh0(w):
    return 1 if w >= 0 and w % 2 == 0 else 0


def hh1(w, max_n=64):
    free_gens = [-1 + n for n in range(max_n)]  # l1 (x) x2^n
    free_gens += [-1 + n for n in range(max_n)]  # l2 (x) x1^n
    free_gens.append(0)  # l1 (x) x1 - l3 (x) x3
    torsion = len(_pairs_summing_to(w))  # weight n1 + n2, killed by x3
    return _free_over_z(free_gens, w) + torsion


def hh2(w, max_n=64):
    gens = [-3 + n for n in range(max_n)]  # l2l3 (x) x1^l
    gens += [-3 + n for n in range(max_n)]  # l3l1 (x) x2^m
    gens += [n1 + n2 - 2 for n1 in range(max_n) for n2 in range(max_n)]
    return _free_over_z(gens, w, x3_power_bound=2)


def hh3(w):
    return max(w + 5, 0)


def table(weights, degrees=range(4)):
    fns = [hh0, hh1, hh2, hh3]
    return {(n, w): fns[n](w) for n in degrees for w in weights}



def hh1_torsion_corrected(w, max_n=64):
    """HH^1 count with l1(x)x2^n and l2(x)x1^n treated as x3-torsion.

    d0(x2^{n+1}) = -(n+1) l1 (x) x2^n x3, so x3 * (l1 (x) x2^n) is a boundary;
    likewise for l2 (x) x1^n. Only l1(x)x1 - l3(x)x3 stays free over Z.
    """
    torsion_gens = [-1 + n for n in range(max_n)] * 2
    count = sum(1 for g in torsion_gens if g == w)
    count += _free_over_z([0], w)
    count += len(_pairs_summing_to(w))
    return count


def euler_characteristic_of_cochains(w):
    """Alternating sum of dim (Lambda^n (x) U)_w, independent of any basis claim."""

    def dim_u(v):
        if v < 0:
            return 0
        return sum(v - 2 * j + 1 for j in range(v // 2 + 1))

    c = [dim_u(w), 2 * dim_u(w + 1) + dim_u(w + 2), dim_u(w + 2) + 2 * dim_u(w + 3), dim_u(w + 4)]
    return c[0] - c[1] + c[2] - c[3]


if __name__ == "__main__":
    for n in range(4):
        print(n, [table(range(-4, 7))[(n, w)] for w in range(-4, 7)])
