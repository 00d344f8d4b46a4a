"""Golden lookup-table rows for the [[5,1,3]] flag-sharing [2;2] scheme.

Row format: location letter + two-qubit error letters, data X error mask,
data Z error mask, first-round outcome bits m1 m5 m3 m4 f1 f2, raw-round
bits m'1 m'5 m'3 m'4.  Uppercase locations are data couplings (error
letters ordered data qubit then measurement qubit); lowercase locations
are the shared-flag couplings (measurement qubit then flag qubit).
"""

GOLDEN_ROWS = """
A_IX 00101 00000 000101 1011
A_XX 01101 00000 000101 0111
A_ZX 00101 01000 000001 1010
A_YX 01101 01000 000001 0110
B_IX 10010 00000 001010 0111
B_XX 10110 00000 001010 1111
B_ZX 10010 00100 011010 0001
B_YX 10110 00100 011010 1001
C_IX 01000 00001 000001 1000
C_XX 11000 00001 000001 1101
C_ZX 01000 10001 101001 0010
C_YX 11000 10001 101001 0111
D_IX 00001 00000 000101 0011
D_XX 00101 00000 000101 1011
D_ZX 00001 00100 000101 0101
D_YX 00101 00100 000101 1101
E_IX 10000 00000 000010 0101
E_XX 10010 00000 001010 0111
E_ZX 10000 00010 000010 1100
E_YX 10010 00010 001010 1110
F_IX 10000 00010 000010 1100
F_XX 10001 00010 000110 1111
F_ZX 10000 00011 010010 1000
F_YX 10001 00011 010110 1011
G_IX 00000 00010 000010 1001
G_XX 10000 00010 000010 1100
G_ZX 00000 10010 100010 0011
G_YX 10000 10010 100010 0110
H_IX 00000 00001 000001 0100
H_XX 01000 00001 000001 1000
H_ZX 00000 01001 000001 0101
H_YX 01000 01001 000001 1001
a_XI 10010 00100 011010 0001
a_XX 10010 00100 111010 0001
a_XZ 10010 00100 011000 0001
a_XY 10010 00100 111000 0001
b_XI 10000 00011 010010 1000
b_XX 10000 00011 111010 1000
b_XZ 10000 00011 010000 1000
b_XY 10000 00011 111000 1000
c_XI 10000 00000 000000 0101
c_XX 10000 00000 001000 0101
c_XZ 10000 00000 000010 0101
c_XY 10000 00000 001010 0101
d_XI 00000 00010 000000 1001
d_XX 00000 00010 000000 1001
d_XZ 00000 00010 000010 1001
d_XY 00000 00010 000010 1001
e_XI 00101 01000 000001 1010
e_XX 00101 01000 010001 1010
e_XZ 00101 01000 000000 1010
e_XY 00101 01000 010000 1010
f_XI 01000 10001 101001 0010
f_XX 01000 10001 111101 0010
f_XZ 01000 10001 101000 0010
f_XY 01000 10001 111100 0010
g_XI 00001 00000 000100 0011
g_XX 00001 00000 000000 0011
g_XZ 00001 00000 000101 0011
g_XY 00001 00000 000001 0011
h_XI 00000 00001 000000 0100
h_XX 00000 00001 000000 0100
h_XZ 00000 00001 000001 0100
h_XY 00000 00001 000001 0100
A_IY 00101 00000 010101 1011
A_XY 01101 00000 010101 0111
A_ZY 00101 01000 010001 1010
A_YY 01101 01000 010001 0110
B_IY 10010 00000 101010 0111
B_XY 10110 00000 101010 1111
B_ZY 10010 00100 111010 0001
B_YY 10110 00100 111010 1001
C_IY 01000 00001 000101 1000
C_XY 11000 00001 000101 1101
C_ZY 01000 10001 101101 0010
C_YY 11000 10001 101101 0111
D_IY 00001 00000 010101 0011
D_XY 00101 00000 010101 1011
D_ZY 00001 00100 010101 0101
D_YY 00101 00100 010101 1101
E_IY 10000 00000 100010 0101
E_XY 10010 00000 101010 0111
E_ZY 10000 00010 100010 1100
E_YY 10010 00010 101010 1110
F_IY 10000 00010 001010 1100
F_XY 10001 00010 001110 1111
F_ZY 10000 00011 011010 1000
F_YY 10001 00011 011110 1011
G_IY 00000 00010 001010 1001
G_XY 10000 00010 001010 1100
G_ZY 00000 10010 101010 0011
G_YY 10000 10010 101010 0110
H_IY 00000 00001 000101 0100
H_XY 01000 00001 000101 1000
H_ZY 00000 01001 000101 0101
H_YY 01000 01001 000101 1001
a_YI 10010 00100 111010 0001
a_YX 10010 00100 011010 0001
a_YZ 10010 00100 111000 0001
a_YY 10010 00100 011000 0001
b_YI 10000 00011 011010 1000
b_YX 10000 00011 110010 1000
b_YZ 10000 00011 011000 1000
b_YY 10000 00011 110000 1000
c_YI 10000 00000 100000 0101
c_YX 10000 00000 101000 0101
c_YZ 10000 00000 100010 0101
c_YY 10000 00000 101010 0101
d_YI 00000 00010 001000 1001
d_YX 00000 00010 001000 1001
d_YZ 00000 00010 001010 1001
d_YY 00000 00010 001010 1001
e_YI 00101 01000 010001 1010
e_YX 00101 01000 000001 1010
e_YZ 00101 01000 010000 1010
e_YY 00101 01000 000000 1010
f_YI 01000 10001 101101 0010
f_YX 01000 10001 111001 0010
f_YZ 01000 10001 101100 0010
f_YY 01000 10001 111000 0010
g_YI 00001 00000 010100 0011
g_YX 00001 00000 010000 0011
g_YZ 00001 00000 010101 0011
g_YY 00001 00000 010001 0011
h_YI 00000 00001 000100 0100
h_YX 00000 00001 000100 0100
h_YZ 00000 00001 000101 0100
h_YY 00000 00001 000101 0100
"""

# (gate kind, measurement-qubit key, partner key, timestep) per letter;
# partner is a data label for uppercase letters, a flag key for lowercase.
LETTER_SITES = {
    "A": ("CZ", "m5", 2, 3),
    "B": ("CZ", "m1", 3, 3),
    "C": ("CZ", "m4", 1, 4),
    "D": ("CNOT", "m5", 3, 4),
    "E": ("CNOT", "m1", 4, 4),
    "F": ("CZ", "m3", 5, 4),
    "G": ("CNOT", "m3", 1, 5),
    "H": ("CNOT", "m4", 2, 5),
    "a": ("CZ", "m1", "f1", 2),
    "b": ("CZ", "m3", "f1", 3),
    "c": ("CZ", "m1", "f1", 5),
    "d": ("CZ", "m3", "f1", 6),
    "e": ("CZ", "m5", "f2", 2),
    "f": ("CZ", "m4", "f2", 3),
    "g": ("CZ", "m5", "f2", 5),
    "h": ("CZ", "m4", "f2", 6),
}

# The published enumeration counts these error patterns per site as the
# high-weight propagation events (96 in total).
HIGH_WEIGHT_PATTERNS = {
    "upper": ("IX", "XX", "ZX", "YX", "IY", "XY", "ZY", "YY"),
    "lower_open": ("XI", "XX", "YI", "YX"),
    "lower_close": ("XZ", "XY", "YZ", "YY"),
}
LOWER_OPEN = "abef"
LOWER_CLOSE = "cdgh"


def parse_rows():
    rows = []
    for line in GOLDEN_ROWS.strip().splitlines():
        label, xmask, zmask, mf, raw = line.split()
        site, letters = label.split("_")
        rows.append((site, letters, xmask, zmask, mf, raw))
    return rows
