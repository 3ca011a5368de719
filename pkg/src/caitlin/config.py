"""Musical configuration with file loading and override precedence.

The config file is flat ``key = value`` text; ``#`` starts a comment.
Command-line overrides beat file settings, which beat the defaults.
"""

from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError
from .syntax import ConstructClass, ConstructKind

ALL_CLASSES = frozenset(ConstructClass)
ALL_KINDS = frozenset(ConstructKind)

# General MIDI programs: 0 acoustic grand, 48 string ensemble, 19 church organ.
DEFAULT_INSTRUMENTS = {0: 0, 1: 48, 2: 19}


@dataclass(frozen=True)
class MusicConfig:
    key_root: int = 60                 # middle C
    tempo: int = 120                   # beats per minute
    ticks_per_quarter: int = 480
    depth_cap: int = 5                 # octave transposition stops here
    melody_channel: int = 0            # selection motifs and case chords
    chord_channel: int = 1             # iteration progressions
    drone_channel: int = 2
    percussion_channel: int = 9        # General MIDI drums
    percussion_key: int = 76           # high woodblock
    instruments: dict = field(default_factory=lambda: dict(DEFAULT_INSTRUMENTS))
    melody_velocity: int = 96
    chord_velocity: int = 96
    drone_velocity: int = 64
    percussion_velocity: int = 100
    drone_offset: int = -12            # drone base sits an octave below the key root
    enabled_classes: frozenset = ALL_CLASSES
    enabled_kinds: frozenset = ALL_KINDS
    max_depth: int | None = None
    max_iterations: int | None = None
    max_events: int = 10_000
    max_steps: int = 100_000

    def __post_init__(self):
        channels = (self.melody_channel, self.chord_channel,
                    self.drone_channel, self.percussion_channel)
        if len(set(channels)) != len(channels):
            raise ConfigError("channels must be distinct")
        _check_range("tempo", self.tempo, 1, 1000)
        _check_range("key_root", self.key_root, 0, 127)
        _check_range("ticks_per_quarter", self.ticks_per_quarter, 24, 32767)
        _check_range("depth_cap", self.depth_cap, 0, 10)
        _check_range("percussion_key", self.percussion_key, 0, 127)
        for channel, program in self.instruments.items():
            _check_range(f"instrument for channel {channel}", program, 0, 127)
        if self.max_depth is not None:
            _check_range("max_depth", self.max_depth, 0, 10 ** 6)
        if self.max_iterations is not None:
            _check_range("max_iterations", self.max_iterations, 1, 10 ** 6)
        _check_range("max_events", self.max_events, 1, 10 ** 9)
        _check_range("max_steps", self.max_steps, 1, 10 ** 9)

    def transposition(self, depth: int) -> int:
        """Semitones added for nesting: one octave per level up to the cap."""
        return 12 * min(depth, self.depth_cap)


def _check_range(name: str, value: int, low: int, high: int) -> None:
    if not isinstance(value, int) or not low <= value <= high:
        raise ConfigError(f"{name} must be an integer in {low}..{high}, got {value}")


def _parse_class(text: str) -> ConstructClass:
    try:
        return ConstructClass(text.strip().lower())
    except ValueError:
        raise ConfigError(f"unknown construct class '{text.strip()}'") from None


def _parse_kind(text: str) -> ConstructKind:
    try:
        return ConstructKind(text.strip().upper())
    except ValueError:
        raise ConfigError(f"unknown construct kind '{text.strip()}'") from None


_INT_KEYS = {
    "key_root": "key_root",
    "tempo": "tempo",
    "ticks_per_quarter": "ticks_per_quarter",
    "depth_cap": "depth_cap",
    "percussion_key": "percussion_key",
    "max_depth": "max_depth",
    "max_iterations": "max_iterations",
    "max_events": "max_events",
    "max_steps": "max_steps",
}
_INSTRUMENT_KEYS = {
    "instrument_melody": "melody_channel",
    "instrument_chords": "chord_channel",
    "instrument_drone": "drone_channel",
}


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse config file text into a settings dict (validated on merge)."""
    settings: dict = {}
    instruments: dict = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{number}: expected key=value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key in _INT_KEYS:
            try:
                settings[_INT_KEYS[key]] = int(value)
            except ValueError:
                raise ConfigError(f"{source}:{number}: {key} must be an integer") from None
        elif key in _INSTRUMENT_KEYS:
            try:
                instruments[key] = int(value)
            except ValueError:
                raise ConfigError(f"{source}:{number}: {key} must be an integer") from None
        elif key == "filter_classes":
            settings["enabled_classes"] = frozenset(
                _parse_class(part) for part in value.split(",") if part.strip())
        elif key == "filter_kinds":
            settings["enabled_kinds"] = frozenset(
                _parse_kind(part) for part in value.split(",") if part.strip())
        else:
            raise ConfigError(f"{source}:{number}: unknown key '{key}'")
    if instruments:
        settings["_instruments"] = instruments
    return settings


def _merge(base: MusicConfig, settings: dict) -> MusicConfig:
    settings = dict(settings)
    instrument_settings = settings.pop("_instruments", {})
    if instrument_settings:
        programs = dict(base.instruments)
        for key, program in instrument_settings.items():
            programs[getattr(base, _INSTRUMENT_KEYS[key])] = program
        settings["instruments"] = programs
    return replace(base, **settings) if settings else base


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> MusicConfig:
    """Build a MusicConfig from defaults, an optional file, and overrides."""
    config = MusicConfig()
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        config = _merge(config, parse_config_text(text, source=str(path)))
    if overrides:
        config = _merge(config, overrides)
    return config
