#!/usr/bin/env python3
"""Straight-line SNOW 2.0 used to produce the frozen keystream vectors in
crates/kdfc-core/tests/snow2.rs.

Field arithmetic is done bit by bit (no lookup tables), the S-box is built
from the GF(2^8) inverse and affine map.

    python3 tools/snow2_oracle.py
"""

M32 = 0xFFFFFFFF
BETA_MOD = 0x1A9  # x^8 + x^7 + x^5 + x^3 + 1
AES_MOD = 0x11B


def gmul(a, b, mod):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= mod
        b >>= 1
    return r


def beta_pow(e):
    r = 1
    for _ in range(e):
        r = gmul(r, 2, BETA_MOD)
    return r


# alpha^4 = C3 alpha^3 + C2 alpha^2 + C1 alpha + C0
C3, C2, C1, C0 = beta_pow(23), beta_pow(245), beta_pow(48), beta_pow(239)
C0_INV = next(x for x in range(1, 256) if gmul(x, C0, BETA_MOD) == 1)


def mul_alpha(w):
    top = w >> 24
    return (((w << 8) & M32)
            ^ (gmul(top, C3, BETA_MOD) << 24) ^ (gmul(top, C2, BETA_MOD) << 16)
            ^ (gmul(top, C1, BETA_MOD) << 8) ^ gmul(top, C0, BETA_MOD))


def mul_alpha_inv(w):
    t = gmul(w & 0xFF, C0_INV, BETA_MOD)
    return ((w >> 8) ^ (t << 24) ^ (gmul(t, C3, BETA_MOD) << 16)
            ^ (gmul(t, C2, BETA_MOD) << 8) ^ gmul(t, C1, BETA_MOD))


def aes_sbox(a):
    x = 0 if a == 0 else next(y for y in range(1, 256) if gmul(a, y, AES_MOD) == 1)
    r = x
    for i in range(1, 5):
        r ^= ((x << i) | (x >> (8 - i))) & 0xFF
    return r ^ 0x63


SBOX = [aes_sbox(a) for a in range(256)]
MIX = [[2, 3, 1, 1], [1, 2, 3, 1], [1, 1, 2, 3], [3, 1, 1, 2]]


def s_box(w):
    s = [SBOX[(w >> (8 * i)) & 0xFF] for i in range(4)]
    out = 0
    for r in range(4):
        v = 0
        for c in range(4):
            v ^= gmul(MIX[r][c], s[c], AES_MOD)
        out |= v << (8 * r)
    return out


def keystream(key, iv, n):
    s = [0] * 16
    if len(key) == 4:
        for i in range(4):
            s[15 - i], s[11 - i], s[7 - i], s[3 - i] = key[i], key[i] ^ M32, key[i], key[i] ^ M32
    else:
        for i in range(8):
            s[15 - i], s[7 - i] = key[i], key[i] ^ M32
    iv3, iv2, iv1, iv0 = iv
    s[15] ^= iv0
    s[12] ^= iv1
    s[10] ^= iv2
    s[9] ^= iv3
    r1 = r2 = 0

    def clock(init):
        nonlocal s, r1, r2
        f = ((s[15] + r1) & M32) ^ r2
        fb = mul_alpha(s[0]) ^ s[2] ^ mul_alpha_inv(s[11])
        if init:
            fb ^= f
        r1, r2 = (s[5] + r2) & M32, s_box(r1)
        s = s[1:] + [fb]

    for _ in range(32):
        clock(True)
    out = []
    for _ in range(n):
        clock(False)
        out.append((((s[15] + r1) & M32) ^ r2) ^ s[0])
    return out


VECTORS = [
    ([0x80000000, 0, 0, 0], [0, 0, 0, 0]),
    ([0x80000000] + [0] * 7, [0, 0, 0, 0]),
    ([0xAAAAAAAA] * 4, [4, 3, 2, 1]),
]

if __name__ == "__main__":
    for key, iv in VECTORS:
        words = keystream(key, iv, 16)
        print("key", " ".join(f"{k:08X}" for k in key), "iv", " ".join(f"{v:08X}" for v in iv))
        print("   ", " ".join(f"{w:08X}" for w in words))
