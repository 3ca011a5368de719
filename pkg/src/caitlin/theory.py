"""Scale, degree and triad arithmetic.

Boolean results map onto mode: true is major, false is the parallel
natural minor (same tonic, degrees 3, 6 and 7 flattened), so motifs keep
their tonic anchoring in either mode.
"""

from enum import Enum

MAJOR_SCALE = (0, 2, 4, 5, 7, 9, 11)
MINOR_SCALE = (0, 2, 3, 5, 7, 8, 10)

MAJOR_TRIAD = (0, 4, 7)
MINOR_TRIAD = (0, 3, 7)

ROMAN_DEGREES = {"I": 1, "ii": 2, "iii": 3, "IV": 4, "V": 5, "vi": 6}


class Mode(Enum):
    MAJOR = "major"
    MINOR = "minor"


def mode_for(result: bool) -> Mode:
    return Mode.MAJOR if result else Mode.MINOR


def scale_of(mode: Mode) -> tuple[int, ...]:
    return MAJOR_SCALE if mode is Mode.MAJOR else MINOR_SCALE


def diatonic_offset(steps: int, scale: tuple[int, ...] = MAJOR_SCALE) -> int:
    """Semitone offset after moving ``steps`` scale positions from the root.

    Works in both directions: +1 from C is D (+2 semitones), -1 is B (-1).
    """
    octaves, index = divmod(steps, len(scale))
    return 12 * octaves + scale[index]


def degree_offset(degree: int, mode: Mode) -> int:
    """Semitone offset of a 1-based scale degree (1..8) in ``mode``."""
    if not 1 <= degree <= 8:
        raise ValueError(f"scale degree out of range: {degree}")
    return diatonic_offset(degree - 1, scale_of(mode))


def triad_offsets(numeral: str, mode: Mode) -> tuple[int, int, int]:
    """Semitone offsets of the triad built on a roman-numeral degree.

    Thirds are stacked within the mode's scale, so quality follows the
    scale: in major, I is 0-4-7 while ii is 2-5-9.
    """
    degree = ROMAN_DEGREES[numeral]
    scale = scale_of(mode)
    root = degree - 1
    return tuple(diatonic_offset(root + 2 * i, scale) for i in range(3))


def quality_triad(root_pitch: int, major: bool) -> tuple[int, int, int]:
    """Absolute triad pitches of explicit quality on ``root_pitch``."""
    intervals = MAJOR_TRIAD if major else MINOR_TRIAD
    return tuple(root_pitch + i for i in intervals)


def clamp_pitch(pitch: int) -> int:
    return min(127, max(0, pitch))
