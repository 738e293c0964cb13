"""
Integer <-> bit helpers.

Bit 1 (x_1, y_1) is always the least-significant bit; strings are rendered
most-significant bit first, the way the published tables print them.
"""


def ceil_log2(p: int) -> int:
    """Smallest w with 2**w >= p (0 for p == 1)."""
    if p < 1:
        raise ValueError(f"ceil_log2 undefined for {p}")
    return (p - 1).bit_length()


def bit(value: int, index: int) -> int:
    """1-based bit accessor."""
    return (value >> (index - 1)) & 1


def bit_string(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else ""


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def column_mask(index: int, width: int) -> int:
    """Bitmask over all 2**width inputs x whose bit `index` is set."""
    mask = 0
    for x in range(1 << width):
        if bit(x, index):
            mask |= 1 << x
    return mask
