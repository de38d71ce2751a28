#!/usr/bin/env python3
"""Reference p-values for the randomness tests in crates/kdfc-core/tests/randtests.rs.

Straight transcriptions of the NIST SP 800-22 statistics, using scipy for
erfc / incomplete gamma. Inputs:

  pi100   first 100 bits of the binary expansion of pi (NIST example string)
  nist128 the 128-bit longest-run example string
  sha     100000 bits: SHA-256(counter as 8-byte little endian), bytes in
          order, bits least significant first

    python3 tools/randtests_oracle.py
"""
import hashlib
import math

from scipy.special import erfc, gammaincc
from scipy.stats import norm

PI100 = ("11001001000011111101101010100010001000010110100011"
         "00001000110100110001001100011001100010100010111000")
NIST128 = ("11001100000101010110110001001100111000000000001001"
           "00110101010001000100111101011010000000110101111100"
           "1100111001101101100010110010")


def sha_bits(n):
    out = []
    ctr = 0
    while len(out) < n:
        for byte in hashlib.sha256(ctr.to_bytes(8, "little")).digest():
            out.extend((byte >> i) & 1 for i in range(8))
        ctr += 1
    return out[:n]


def monobit(e):
    s = sum(2 * b - 1 for b in e)
    return erfc(abs(s) / math.sqrt(len(e)) / math.sqrt(2))


def block_frequency(e, m):
    nb = len(e) // m
    chi = 4 * m * sum((sum(e[i * m:(i + 1) * m]) / m - 0.5) ** 2 for i in range(nb))
    return gammaincc(nb / 2, chi / 2)


def runs(e):
    n = len(e)
    pi = sum(e) / n
    if abs(pi - 0.5) >= 2 / math.sqrt(n):
        return 0.0
    v = 1 + sum(e[i] != e[i + 1] for i in range(n - 1))
    return erfc(abs(v - 2 * n * pi * (1 - pi)) / (2 * math.sqrt(2 * n) * pi * (1 - pi)))


def longest_run(e):
    n = len(e)
    if n < 6272:
        m, lo, probs = 8, 1, [0.2148, 0.3672, 0.2305, 0.1875]
    elif n < 750000:
        m, lo, probs = 128, 4, [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]
    else:
        m, lo, probs = 10000, 10, [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]
    k = len(probs) - 1
    nb = n // m
    v = [0] * (k + 1)
    for i in range(nb):
        best = run = 0
        for b in e[i * m:(i + 1) * m]:
            run = run + 1 if b else 0
            best = max(best, run)
        v[min(max(best, lo), lo + k) - lo] += 1
    chi = sum((v[i] - nb * probs[i]) ** 2 / (nb * probs[i]) for i in range(k + 1))
    return gammaincc(k / 2, chi / 2)


def gf2_rank(rows, width):
    rows = list(rows)
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if (rows[i] >> c) & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= rows[r]
        r += 1
    return r


def rank_prob(r, m, q):
    p = 2.0 ** (r * (q + m - r) - m * q)
    for i in range(r):
        p *= (1 - 2.0 ** (i - q)) * (1 - 2.0 ** (i - m)) / (1 - 2.0 ** (i - r))
    return p


def rank(e):
    nm = len(e) // 1024
    f = [0, 0, 0]
    for k in range(nm):
        rows = []
        for r in range(32):
            bits = e[k * 1024 + r * 32: k * 1024 + (r + 1) * 32]
            rows.append(sum(b << i for i, b in enumerate(bits)))
        rk = gf2_rank(rows, 32)
        f[0 if rk == 32 else 1 if rk == 31 else 2] += 1
    p32, p31 = rank_prob(32, 32, 32), rank_prob(31, 32, 32)
    ps = [p32, p31, 1 - p32 - p31]
    chi = sum((f[i] - nm * ps[i]) ** 2 / (nm * ps[i]) for i in range(3))
    return math.exp(-chi / 2)


def cusum(e, reverse):
    n = len(e)
    seq = e[::-1] if reverse else e
    s = z = 0
    for b in seq:
        s += 2 * b - 1
        z = max(z, abs(s))
    sq = math.sqrt(n)
    s1 = sum(norm.cdf((4 * k + 1) * z / sq) - norm.cdf((4 * k - 1) * z / sq)
             for k in range(int((-n / z + 1) / 4), int((n / z - 1) / 4) + 1))
    s2 = sum(norm.cdf((4 * k + 3) * z / sq) - norm.cdf((4 * k + 1) * z / sq)
             for k in range(int((-n / z - 3) / 4), int((n / z - 1) / 4) + 1))
    return 1 - s1 + s2


def counts(e, m):
    n = len(e)
    ext = e + e[:m - 1]
    c = {}
    for i in range(n):
        key = tuple(ext[i:i + m])
        c[key] = c.get(key, 0) + 1
    return c


def psi(e, m):
    if m <= 0:
        return 0.0
    n = len(e)
    return 2 ** m / n * sum(v * v for v in counts(e, m).values()) - n


def serial(e, m):
    d1 = psi(e, m) - psi(e, m - 1)
    d2 = psi(e, m) - 2 * psi(e, m - 1) + psi(e, m - 2)
    return gammaincc(2 ** (m - 2), d1 / 2), gammaincc(2 ** (m - 3), d2 / 2)


def apen(e, m):
    n = len(e)

    def phi(mm):
        return sum((v / n) * math.log(v / n) for v in counts(e, mm).values())

    ap = phi(m) - phi(m + 1)
    return gammaincc(2 ** (m - 1), n * (math.log(2) - ap))


def bm(s):
    n = len(s)
    c, b = [1] + [0] * n, [1] + [0] * n
    l, m = 0, -1
    for i in range(n):
        d = s[i]
        for j in range(1, l + 1):
            d ^= c[j] & s[i - j]
        if d:
            t = c[:]
            for j in range(n - i + m):
                c[j + i - m] ^= b[j]
            if l <= i // 2:
                l, m, b = i + 1 - l, i, t
    return l


def linear_complexity(e, m):
    nb = len(e) // m
    mu = m / 2 + (9 + (-1) ** (m + 1)) / 36 - (m / 3 + 2 / 9) / 2 ** m
    pis = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833]
    v = [0] * 7
    for i in range(nb):
        t = (-1) ** m * (bm(e[i * m:(i + 1) * m]) - mu) + 2 / 9
        cls = 0 if t <= -2.5 else 1 if t <= -1.5 else 2 if t <= -0.5 else 3 if t <= 0.5 else \
            4 if t <= 1.5 else 5 if t <= 2.5 else 6
        v[cls] += 1
    chi = sum((v[i] - nb * pis[i]) ** 2 / (nb * pis[i]) for i in range(7))
    return gammaincc(3, chi / 2)


if __name__ == "__main__":
    pi100 = [int(c) for c in PI100]
    n128 = [int(c) for c in NIST128]
    sha = sha_bits(100000)
    print("pi100 monobit", repr(monobit(pi100)))
    print("pi100 block_frequency_10", repr(block_frequency(pi100, 10)))
    print("pi100 runs", repr(runs(pi100)))
    print("pi100 cusum", repr(cusum(pi100, False)), repr(cusum(pi100, True)))
    print("pi100 serial_2", *map(repr, serial(pi100, 2)))
    print("pi100 serial_3", *map(repr, serial(pi100, 3)))
    print("pi100 apen_2", repr(apen(pi100, 2)))
    print("nist128 longest_run", repr(longest_run(n128)))
    print("sha monobit", repr(monobit(sha)))
    print("sha block_frequency_128", repr(block_frequency(sha, 128)))
    print("sha runs", repr(runs(sha)))
    print("sha longest_run", repr(longest_run(sha)))
    print("sha rank", repr(rank(sha)))
    print("sha cusum", repr(cusum(sha, False)), repr(cusum(sha, True)))
    print("sha serial_2", *map(repr, serial(sha, 2)))
    print("sha apen_2", repr(apen(sha, 2)))
    print("sha linear_complexity_500", repr(linear_complexity(sha, 500)))
