#!/usr/bin/env python3
"""Generate classical modular polynomials Phi_N from q-expansions of j.

Phi_l(X, Y) for prime l is the unique polynomial (monic of degree l+1 in X)
with Phi_l(j(q), j(q^l)) = 0.  Unknown coefficients are solved for modulo a
set of 62-bit primes and lifted with CRT to balanced integers; one extra
prime is held back to confirm the lift.  Output uses the one-monomial-per-line
format "i j coeff" with i >= j.

    python3 scripts/gen_modular_polynomials.py data/
"""
import sys
from pathlib import Path

PRIMES = [
    (1 << 62) - 57, (1 << 62) - 87, (1 << 62) - 117, (1 << 62) - 143,
    (1 << 62) - 153, (1 << 62) - 167, (1 << 62) - 171, (1 << 62) - 195,
    (1 << 62) - 203, (1 << 62) - 273, (1 << 62) - 287, (1 << 62) - 317,
    (1 << 62) - 443, (1 << 62) - 483, (1 << 62) - 495, (1 << 62) - 575,
]


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def mul(a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        if x:
            for k, y in enumerate(b[: prec - i]):
                out[i + k] += x * y
    return out


def j_coefficients(prec):
    """Coefficients c[n] of q*j(q) = sum c[n] q^n, n < prec."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, prec)]
    e4_cubed = mul(mul(e4, e4, prec), e4, prec)
    # Delta/q = prod (1 - q^n)^24; invert it as a power series.
    eta = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        for _ in range(24):
            for i in range(prec - 1, n - 1, -1):
                eta[i] -= eta[i - n]
    inv = [0] * prec
    inv[0] = 1
    for i in range(1, prec):
        inv[i] = -sum(eta[k] * inv[i - k] for k in range(1, i + 1))
    return mul(e4_cubed, inv, prec)


def solve_mod(rows, rhs, P):
    """Least-squares-free exact solve of an overdetermined consistent system mod P."""
    m = len(rows)
    n = len(rows[0])
    a = [[x % P for x in r] + [b % P] for r, b in zip(rows, rhs)]
    piv_row = 0
    pivots = []
    for c in range(n):
        r = next((i for i in range(piv_row, m) if a[i][c]), None)
        if r is None:
            raise RuntimeError("singular system")
        a[piv_row], a[r] = a[r], a[piv_row]
        inv = pow(a[piv_row][c], P - 2, P)
        a[piv_row] = [x * inv % P for x in a[piv_row]]
        for i in range(m):
            if i != piv_row and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % P for x, y in zip(a[i], a[piv_row])]
        pivots.append(c)
        piv_row += 1
    for i in range(piv_row, m):
        if a[i][n]:
            raise RuntimeError("inconsistent system")
    return [a[i][n] for i in range(n)]


def phi_prime(l):
    d = l + 1
    # Unknowns: c[a][b] for a >= b, excluding the normalised X^{l+1} term.
    unknowns = [(a, b) for a in range(d + 1) for b in range(a + 1) if (a, b) != (d, 0)]
    lowest = -d * d
    extra = 40
    top = extra  # collect q^n for lowest <= n < top
    prec = top - lowest + 2 * d + 2
    jc = j_coefficients(prec + l * d)

    def series_j(power, scale):
        # Laurent series of j(q^scale)^power as (valuation, coefficients)
        base = [0] * prec
        for i, c in enumerate(jc):
            if i * scale < prec:
                base[i * scale] = c
        out = [1] + [0] * (prec - 1)
        for _ in range(power):
            out = mul(out, base, prec)
        return -power * scale, out

    cache = {}

    def term(a, b):
        # coefficient list of j(q)^a j(q^l)^b + (a != b) j(q)^b j(q^l)^a indexed by n - lowest
        key = (a, b)
        if key in cache:
            return cache[key]
        vec = [0] * (top - lowest)
        for (x, y) in {(a, b), (b, a)}:
            v1, s1 = series_j(x, 1)
            v2, s2 = series_j(y, l)
            prod = mul(s1, s2, prec)
            v = v1 + v2
            for i, c in enumerate(prod):
                n = v + i
                if lowest <= n < top:
                    vec[n - lowest] += c
        cache[key] = vec
        return vec

    cols = [term(a, b) for (a, b) in unknowns]
    norm = term(d, 0)
    rows = [[col[r] for col in cols] for r in range(top - lowest)]
    rhs = [-norm[r] for r in range(top - lowest)]

    residues = [solve_mod(rows, rhs, P) for P in PRIMES]
    modulus = 1
    for P in PRIMES[:-1]:
        modulus *= P
    result = {}
    for idx, key in enumerate(unknowns):
        x, mod = 0, 1
        for P, res in zip(PRIMES[:-1], residues[:-1]):
            t = ((res[idx] - x) * pow(mod, P - 2, P)) % P
            x += mod * t
            mod *= P
        if x > modulus // 2:
            x -= modulus
        if x % PRIMES[-1] != residues[-1][idx]:
            raise RuntimeError(f"CRT lift not confirmed for l={l} at {key}")
        if x:
            result[key] = x
    result[(d, 0)] = 1
    return result


def write(path, level, coeffs):
    lines = [f"# classical modular polynomial Phi_{level}(X, Y), symmetric pairs stored once (i >= j)"]
    for (a, b) in sorted(coeffs, reverse=True):
        lines.append(f"{a} {b} {coeffs[(a, b)]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)

    for l in (2, 3, 5, 7, 11, 13):  # Phi_1 = X - Y is built in
        coeffs = phi_prime(l)
        write(out / f"phi{l}.txt", l, coeffs)
        print(f"phi{l}: {len(coeffs)} monomial orbits, max digits "
              f"{max(len(str(abs(c))) for c in coeffs.values())}", flush=True)


if __name__ == "__main__":
    main()
