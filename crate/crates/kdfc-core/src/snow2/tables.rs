//! Compile-time tables: the AES S-box, the SNOW 2.0 α multiplication tables
//! and the combined S-box/MixColumn table.

/// Multiplication in GF(2^8) modulo the given 9-bit polynomial.
pub(crate) const fn gf_mul(mut a: u8, mut b: u8, modulus: u16) -> u8 {
    let mut acc = 0u8;
    let reduce = (modulus & 0xff) as u8;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        let carry = a & 0x80 != 0;
        a <<= 1;
        if carry {
            a ^= reduce;
        }
        b >>= 1;
    }
    acc
}

/// Field for the LFSR words: β is a root of x^8 + x^7 + x^5 + x^3 + 1.
pub(crate) const BETA_MOD: u16 = 0x1a9;
/// The Rijndael field x^8 + x^4 + x^3 + x + 1.
pub(crate) const AES_MOD: u16 = 0x11b;

pub(crate) const fn beta_pow(e: u32) -> u8 {
    let mut acc = 1u8;
    let mut i = 0;
    while i < e {
        acc = gf_mul(acc, 2, BETA_MOD);
        i += 1;
    }
    acc
}

const fn aes_sbox() -> [u8; 256] {
    // inverses through exp/log tables for the generator 3
    let mut exp = [0u8; 256];
    let mut log = [0u8; 256];
    let mut g = 1u8;
    let mut i = 0;
    while i < 255 {
        exp[i] = g;
        log[g as usize] = i as u8;
        g = gf_mul(g, 3, AES_MOD);
        i += 1;
    }
    let mut t = [0u8; 256];
    let mut x = 0usize;
    while x < 256 {
        let b = if x == 0 { 0 } else { exp[(255 - log[x] as usize) % 255] };
        t[x] = b ^ b.rotate_left(1) ^ b.rotate_left(2) ^ b.rotate_left(3) ^ b.rotate_left(4) ^ 0x63;
        x += 1;
    }
    t
}

const SBOX: [u8; 256] = aes_sbox();

const fn mul_table(e3: u32, e2: u32, e1: u32, e0: u32) -> [u32; 256] {
    let (b3, b2, b1, b0) = (beta_pow(e3), beta_pow(e2), beta_pow(e1), beta_pow(e0));
    let mut t = [0u32; 256];
    let mut c = 0usize;
    while c < 256 {
        let c8 = c as u8;
        t[c] = ((gf_mul(c8, b3, BETA_MOD) as u32) << 24)
            | ((gf_mul(c8, b2, BETA_MOD) as u32) << 16)
            | ((gf_mul(c8, b1, BETA_MOD) as u32) << 8)
            | gf_mul(c8, b0, BETA_MOD) as u32;
        c += 1;
    }
    t
}

/// `MUL_A[c]` is `c·α^4` folded back: the contribution of the top byte when
/// multiplying by α.
pub(crate) static MUL_A: [u32; 256] = mul_table(23, 245, 48, 239);
/// The contribution of the low byte when multiplying by α⁻¹.
pub(crate) static MUL_AINV: [u32; 256] = mul_table(16, 39, 6, 64);

const fn sbox_table(pos: usize) -> [u32; 256] {
    // MixColumn rows; output byte r collects coefficient MIX[r][pos] · s.
    const MIX: [[u8; 4]; 4] = [[2, 3, 1, 1], [1, 2, 3, 1], [1, 1, 2, 3], [3, 1, 1, 2]];
    let mut t = [0u32; 256];
    let mut x = 0usize;
    while x < 256 {
        let s = SBOX[x];
        let mut w = 0u32;
        let mut r = 0;
        while r < 4 {
            w |= (gf_mul(s, MIX[r][pos], AES_MOD) as u32) << (8 * r);
            r += 1;
        }
        t[x] = w;
        x += 1;
    }
    t
}

pub(crate) static T: [[u32; 256]; 4] = [sbox_table(0), sbox_table(1), sbox_table(2), sbox_table(3)];
