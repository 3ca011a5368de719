"""Leitmotif templates and their rendering into note events.

Both construct classes share one theme each. Selections get a rising
five-degree scale on entry and its descending mirror on exit; the four
selection kinds differ only in rhythm. Iterations get chord progressions
that start and end on the tonic; the four loop kinds differ in the chords
between. Condition results sound as a single major or minor triad, loops
carry a background drone, and case label scanning adds percussion ticks.

All builders return notes with onsets relative to the motif start; the
scheduler shifts them onto the global timeline.
"""

from dataclasses import dataclass
from fractions import Fraction

from .config import MusicConfig
from .syntax import ConstructClass, ConstructKind, classify_construct
from .theory import Mode, clamp_pitch, degree_offset, diatonic_offset, quality_triad, triad_offsets

EIGHTH = Fraction(1, 2)
SIXTEENTH = Fraction(1, 4)
DOTTED_EIGHTH = Fraction(3, 4)
QUARTER = Fraction(1)


@dataclass(frozen=True)
class NoteEvent:
    pitch: int      # MIDI note number
    onset: int      # ticks
    duration: int   # ticks, > 0
    velocity: int
    channel: int


@dataclass(frozen=True)
class MotifTemplate:
    """Declarative melody (selections) or progression (iterations)."""
    kind: ConstructKind
    entry_degrees: tuple[int, ...] = ()
    exit_degrees: tuple[int, ...] = ()
    rhythm: tuple[Fraction, ...] = ()
    lead_rest: Fraction = Fraction(0)
    entry_chords: tuple[str, ...] = ()
    exit_chords: tuple[str, ...] = ()


_SCALE_UP = (1, 2, 3, 4, 5)
_SCALE_DOWN = tuple(reversed(_SCALE_UP))

TEMPLATES = {
    ConstructKind.IF: MotifTemplate(
        ConstructKind.IF, _SCALE_UP, _SCALE_DOWN,
        rhythm=(EIGHTH,) * 5),
    ConstructKind.IF_ELSE: MotifTemplate(
        ConstructKind.IF_ELSE, _SCALE_UP, _SCALE_DOWN,
        rhythm=(DOTTED_EIGHTH, SIXTEENTH, DOTTED_EIGHTH, SIXTEENTH, EIGHTH)),
    ConstructKind.CASE: MotifTemplate(
        ConstructKind.CASE, _SCALE_UP, _SCALE_DOWN,
        rhythm=(QUARTER, EIGHTH, EIGHTH, QUARTER, QUARTER)),
    ConstructKind.CASE_ELSE: MotifTemplate(
        ConstructKind.CASE_ELSE, _SCALE_UP, _SCALE_DOWN,
        rhythm=(EIGHTH, EIGHTH, EIGHTH, EIGHTH, QUARTER), lead_rest=EIGHTH),
    ConstructKind.WHILE: MotifTemplate(
        ConstructKind.WHILE,
        entry_chords=("I",), exit_chords=("V", "I")),
    ConstructKind.REPEAT: MotifTemplate(
        ConstructKind.REPEAT,
        entry_chords=("I", "ii"), exit_chords=("V", "I")),
    ConstructKind.FOR_TO: MotifTemplate(
        ConstructKind.FOR_TO,
        entry_chords=("I", "IV", "V"), exit_chords=("IV", "V", "I")),
    ConstructKind.FOR_DOWNTO: MotifTemplate(
        ConstructKind.FOR_DOWNTO,
        entry_chords=("I", "V", "IV"), exit_chords=("V", "IV", "I")),
}


def beats_to_ticks(beats: Fraction, config: MusicConfig) -> int:
    return int(config.ticks_per_quarter * beats)


def motif_span(notes) -> int:
    """Length of a motif in ticks (end of its last-sounding note)."""
    return max((n.onset + n.duration for n in notes), default=0)


def _melody(degrees, template, root, mode, config) -> list[NoteEvent]:
    notes = []
    cursor = beats_to_ticks(template.lead_rest, config)
    for degree, beats in zip(degrees, template.rhythm):
        duration = beats_to_ticks(beats, config)
        notes.append(NoteEvent(clamp_pitch(root + degree_offset(degree, mode)),
                               cursor, duration, config.melody_velocity,
                               config.melody_channel))
        cursor += duration
    return notes


def _progression(numerals, root, mode, config) -> list[NoteEvent]:
    notes = []
    cursor = 0
    duration = beats_to_ticks(QUARTER, config)
    for numeral in numerals:
        for offset in triad_offsets(numeral, mode):
            notes.append(NoteEvent(clamp_pitch(root + offset), cursor, duration,
                                   config.chord_velocity, config.chord_channel))
        cursor += duration
    return notes


def _motif(kind: ConstructKind, depth: int, mode: Mode, config: MusicConfig,
           entry: bool) -> list[NoteEvent]:
    template = TEMPLATES[kind]
    root = config.key_root + config.transposition(depth)
    if classify_construct(kind) is ConstructClass.SELECTION:
        degrees = template.entry_degrees if entry else template.exit_degrees
        return _melody(degrees, template, root, mode, config)
    numerals = template.entry_chords if entry else template.exit_chords
    return _progression(numerals, root, mode, config)


def motif_for_entry(kind: ConstructKind, depth: int, mode: Mode,
                    config: MusicConfig) -> list[NoteEvent]:
    """Entry motif of ``kind`` transposed one octave per nesting level."""
    return _motif(kind, depth, mode, config, entry=True)


def motif_for_exit(kind: ConstructKind, depth: int, mode: Mode,
                   config: MusicConfig) -> list[NoteEvent]:
    """Exit motif; pass the mode of the construct's final condition result."""
    return _motif(kind, depth, mode, config, entry=False)


def condition_motif(result: bool, depth: int, config: MusicConfig,
                    channel: int | None = None) -> list[NoteEvent]:
    """One short triad on the key root: major for true, minor for false."""
    root = config.key_root + config.transposition(depth)
    duration = beats_to_ticks(EIGHTH, config)
    if channel is None:
        channel = config.chord_channel
    return [NoteEvent(clamp_pitch(p), 0, duration, config.chord_velocity, channel)
            for p in quality_triad(root, major=result)]


def _scan_tick(at: int, depth: int, config: MusicConfig) -> NoteEvent:
    return NoteEvent(config.percussion_key, at, beats_to_ticks(SIXTEENTH, config),
                     config.percussion_velocity, config.percussion_channel)


def _outcome_chord(at: int, root: int, major: bool, config: MusicConfig) -> list[NoteEvent]:
    duration = beats_to_ticks(QUARTER, config)
    return [NoteEvent(clamp_pitch(p), at, duration, config.melody_velocity,
                      config.melody_channel)
            for p in quality_triad(root, major)]


def case_scan_events(scans, depth: int, config: MusicConfig,
                     outcome: str | None = None) -> list[NoteEvent]:
    """Render one case activation's label scan as percussion plus outcome.

    ``scans`` is the ordered (label_index, matched) list. Every inspected
    label sounds a percussion tick; a match adds a major triad coincident
    with its tick. ``outcome`` is "else" (minor triad after the ticks) or
    "nomatch" (minor triad an octave below the match register) when no
    label matched; None means the outcome is implied by the scans.
    """
    root = config.key_root + config.transposition(depth)
    step = beats_to_ticks(EIGHTH, config)
    notes = []
    cursor = 0
    for _, matched in scans:
        notes.append(_scan_tick(cursor, depth, config))
        if matched:
            notes.extend(_outcome_chord(cursor, root, major=True, config=config))
            cursor += beats_to_ticks(QUARTER, config)
            return notes
        cursor += step
    if outcome == "else":
        notes.extend(_outcome_chord(cursor, root, major=False, config=config))
    elif outcome == "nomatch":
        notes.extend(_outcome_chord(cursor, root - 12, major=False, config=config))
    return notes


def drone_events(kind: ConstructKind, spans, depth: int,
                 config: MusicConfig) -> list[NoteEvent]:
    """Background drone for one loop activation.

    ``spans`` holds (start, end) tick pairs: a single overall span for
    while/repeat (one sustained note an octave below the key root), or one
    span per iteration for the counted loops, whose drone steps one
    diatonic degree up (to) or down (downto) per repetition.
    """
    base = config.key_root + config.drone_offset + config.transposition(depth)
    notes = []
    if kind in (ConstructKind.WHILE, ConstructKind.REPEAT):
        for start, end in spans:
            if end > start:
                notes.append(NoteEvent(clamp_pitch(base), start, end - start,
                                       config.drone_velocity, config.drone_channel))
        return notes
    direction = -1 if kind is ConstructKind.FOR_DOWNTO else 1
    for index, (start, end) in enumerate(spans):
        if end <= start:
            continue
        pitch = clamp_pitch(base + diatonic_offset(direction * index))
        notes.append(NoteEvent(pitch, start, end - start,
                               config.drone_velocity, config.drone_channel))
    return notes
