"""Strict key-value run configuration.

The format is line-oriented UTF-8 text: ``key = value`` with dotted lowercase
keys, blank lines allowed, ``#`` starting a comment anywhere on a line. Every
key must be known, every value must parse and sit in range, and duplicate keys
within one source are rejected; the three failure modes carry distinct
exception types (ConfigSyntaxError with line/column, ConfigUnknownKeyError,
ConfigRangeError). ``--set key=value`` overrides use the same grammar and are
applied after the file.

The full key set, defaults included, is what ``RunConfig.serialize`` emits;
README documents each key. The default output directory comes from the
DTCLAB_OUTPUT environment variable when ``output.dir`` is not given.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

from .harness import initial_bits
from .model import ModelParams, NearestNeighborCoupling, PowerLawCoupling

COMMANDS = ("evolve", "spectrum", "ensemble", "scan", "compare")
OUTPUT_ENV_VAR = "DTCLAB_OUTPUT"
DEFAULT_OUTPUT_DIR = "results"

# commands whose pipeline ends in subharmonic metrics, which need an even K
_METRIC_COMMANDS = ("spectrum", "ensemble", "scan", "compare")

_KEY_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789._")


class ConfigError(Exception):
    """Base class for configuration failures."""


class ConfigSyntaxError(ConfigError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ConfigUnknownKeyError(ConfigError):
    def __init__(self, key: str, line: int | None = None):
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"unknown key {key!r}{where}")
        self.key = key


class ConfigRangeError(ConfigError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


_KNOWN_KEYS = (
    "command",
    "model.n_sites",
    "model.g",
    "model.t1",
    "model.t2",
    "model.t3",
    "model.coupling",
    "model.j0",
    "model.delta_j",
    "model.alpha",
    "model.wx",
    "model.wy",
    "model.wz",
    "model.seed",
    "model.realization_index",
    "run.periods",
    "run.realizations",
    "run.initial_state",
    "run.epsilon_grid",
    "run.window",
    "run.aggregate",
    "run.workers",
    "output.dir",
    "output.plot",
)


def _parse_line(line: str, lineno: int):
    """One ``key = value`` assignment -> (key, value); None for blank/comment."""
    text = line.split("#", 1)[0]
    if not text.strip():
        return None
    i = 0
    while i < len(text) and text[i].isspace():
        i += 1
    start = i
    while i < len(text) and text[i] in _KEY_CHARS:
        i += 1
    if i == start:
        raise ConfigSyntaxError("expected a key (lowercase dotted name)", lineno, i + 1)
    key = text[start:i]
    while i < len(text) and text[i].isspace():
        i += 1
    if i >= len(text) or text[i] != "=":
        raise ConfigSyntaxError("expected '=' after key", lineno, i + 1)
    value = text[i + 1 :].strip()
    if not value:
        raise ConfigSyntaxError("missing value after '='", lineno, i + 2)
    if key not in _KNOWN_KEYS:
        raise ConfigUnknownKeyError(key, lineno)
    return key, value


def parse_config_text(text: str) -> dict:
    """Parse config text into an ordered {key: value-string} map, strictly."""
    entries: dict[str, str] = {}
    entry_lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parsed = _parse_line(raw, lineno)
        if parsed is None:
            continue
        key, value = parsed
        if key in entries:
            raise ConfigSyntaxError(
                f"duplicate key {key!r} (first set at line {entry_lines[key]})",
                lineno,
                1,
            )
        entries[key] = value
        entry_lines[key] = lineno
    return entries


def parse_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def parse_assignment(text: str):
    """Parse one --set style ``key=value`` string."""
    parsed = _parse_line(text, 1)
    if parsed is None:
        raise ConfigSyntaxError("expected 'key=value'", 1, 1)
    return parsed


def _to_int(key: str, value: str) -> int:
    try:
        return int(value, 10)
    except ValueError:
        raise ConfigRangeError(key, f"expected an integer, got {value!r}") from None


def _to_float(key: str, value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise ConfigRangeError(key, f"expected a number, got {value!r}") from None
    if not math.isfinite(x):
        raise ConfigRangeError(key, f"value must be finite, got {value!r}")
    return x


def _to_bool(key: str, value: str) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise ConfigRangeError(key, f"expected true or false, got {value!r}")


def _to_choice(key: str, value: str, options) -> str:
    if value not in options:
        raise ConfigRangeError(key, f"expected one of {', '.join(options)}, got {value!r}")
    return value


def _to_epsilon_grid(key: str, value: str) -> tuple:
    """Grid syntax: comma list "0,0.05,0.1" or inclusive range "start:step:stop"."""
    if ":" in value:
        parts = value.split(":")
        if len(parts) != 3:
            raise ConfigRangeError(key, f"range grid must be start:step:stop, got {value!r}")
        start, step, stop = (_to_float(key, p) for p in parts)
        if step <= 0 or stop < start:
            raise ConfigRangeError(key, "range grid needs step > 0 and stop >= start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        grid = tuple(start + k * step for k in range(count))
    else:
        grid = tuple(_to_float(key, p) for p in value.split(","))
    if not grid:
        raise ConfigRangeError(key, "grid must be non-empty")
    if any(e < 0.0 or e >= 1.0 for e in grid):
        raise ConfigRangeError(key, "grid values must lie in [0, 1)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigRangeError(key, "grid values must be strictly increasing")
    return grid


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: command, model, run controls, output policy."""

    command: str
    model: ModelParams
    periods: int = 100
    realizations: int = 50
    initial_state: str = "neel"
    epsilon_grid: tuple = tuple(k * 0.02 for k in range(16))
    window: str = "none"
    aggregate: str = "per-site"
    workers: int = 1
    output_dir: str = DEFAULT_OUTPUT_DIR
    plot: bool = False

    def serialize(self) -> str:
        """Canonical text form; parsing it back reproduces this config exactly."""
        m = self.model
        lines = [
            f"command = {self.command}",
            f"model.n_sites = {m.n_sites}",
            f"model.g = {m.g!r}",
            f"model.t1 = {m.t1!r}",
            f"model.t2 = {m.t2!r}",
            f"model.t3 = {m.t3!r}",
        ]
        if isinstance(m.coupling, NearestNeighborCoupling):
            lines += [
                "model.coupling = nearest_neighbor",
                f"model.j0 = {m.coupling.j0!r}",
                f"model.delta_j = {m.coupling.delta_j!r}",
            ]
        else:
            lines += [
                "model.coupling = power_law",
                f"model.j0 = {m.coupling.j0!r}",
                f"model.alpha = {m.coupling.alpha!r}",
            ]
        lines += [
            f"model.wx = {m.wx!r}",
            f"model.wy = {m.wy!r}",
            f"model.wz = {m.wz!r}",
            f"model.seed = {m.seed}",
            f"model.realization_index = {m.realization_index}",
            f"run.periods = {self.periods}",
            f"run.realizations = {self.realizations}",
            f"run.initial_state = {self.initial_state}",
            "run.epsilon_grid = " + ",".join(repr(e) for e in self.epsilon_grid),
            f"run.window = {self.window}",
            f"run.aggregate = {self.aggregate}",
            f"run.workers = {self.workers}",
            f"output.dir = {self.output_dir}",
            f"output.plot = {'true' if self.plot else 'false'}",
        ]
        return "\n".join(lines) + "\n"


def resolve_config(entries: dict, command: str | None = None) -> RunConfig:
    """Validate merged key-value entries into a RunConfig.

    Args:
        entries: merged {key: value-string} map (file entries with overrides
            already applied on top).
        command: the CLI subcommand; when given it is authoritative and any
            conflicting ``command`` entry is a range violation.

    Raises:
        ConfigUnknownKeyError, ConfigRangeError: per the strict contract.
    """
    for key in entries:
        if key not in _KNOWN_KEYS:
            raise ConfigUnknownKeyError(key)

    cmd_entry = entries.get("command")
    if cmd_entry is not None:
        cmd_entry = _to_choice("command", cmd_entry, COMMANDS)
    if command is None:
        command = cmd_entry
    elif cmd_entry is not None and cmd_entry != command:
        raise ConfigRangeError(
            "command", f"file says {cmd_entry!r} but the subcommand is {command!r}"
        )
    if command is None:
        raise ConfigRangeError("command", "no command given")

    if "model.n_sites" not in entries:
        raise ConfigRangeError("model.n_sites", "required")
    n_sites = _to_int("model.n_sites", entries["model.n_sites"])
    if not 1 <= n_sites <= 24:
        raise ConfigRangeError("model.n_sites", f"must be in [1, 24], got {n_sites}")

    def positive_float(key, default, minimum=0.0, strict=False):
        if key not in entries:
            return default
        x = _to_float(key, entries[key])
        if x < minimum or (strict and x <= minimum):
            op = ">" if strict else ">="
            raise ConfigRangeError(key, f"must be {op} {minimum}, got {x}")
        return x

    g = positive_float("model.g", 0.97)
    t1 = positive_float("model.t1", 1.0)
    t2 = positive_float("model.t2", 1.0)
    t3 = positive_float("model.t3", 1.0)
    if t1 + t2 + t3 <= 0:
        raise ConfigRangeError("model.t1", "stage durations must sum to a positive period")

    variant = _to_choice(
        "model.coupling",
        entries.get("model.coupling", "nearest_neighbor"),
        ("nearest_neighbor", "power_law"),
    )
    j0 = _to_float("model.j0", entries["model.j0"]) if "model.j0" in entries else 0.25
    if variant == "nearest_neighbor":
        if "model.alpha" in entries:
            raise ConfigRangeError("model.alpha", "only applies to power_law coupling")
        delta_j = positive_float("model.delta_j", 0.1)
        coupling = NearestNeighborCoupling(j0, delta_j)
    else:
        if "model.delta_j" in entries:
            raise ConfigRangeError(
                "model.delta_j", "only applies to nearest_neighbor coupling"
            )
        alpha = positive_float("model.alpha", 1.5, minimum=0.0, strict=True)
        coupling = PowerLawCoupling(j0, alpha)

    wx = positive_float("model.wx", 0.02)
    wy = positive_float("model.wy", 0.02)
    wz = positive_float("model.wz", math.pi)

    def non_negative_int(key, default, minimum=0):
        if key not in entries:
            return default
        v = _to_int(key, entries[key])
        if v < minimum:
            raise ConfigRangeError(key, f"must be >= {minimum}, got {v}")
        return v

    seed = non_negative_int("model.seed", 1)
    realization_index = non_negative_int("model.realization_index", 0)
    model = ModelParams(
        n_sites=n_sites, g=g, t1=t1, t2=t2, t3=t3, coupling=coupling,
        wx=wx, wy=wy, wz=wz, seed=seed, realization_index=realization_index,
    )

    periods = non_negative_int("run.periods", 100, minimum=1)
    if command in _METRIC_COMMANDS and periods % 2:
        raise ConfigRangeError(
            "run.periods", f"must be even for the {command} command, got {periods}"
        )
    realizations = non_negative_int("run.realizations", 50, minimum=1)
    initial_state = entries.get("run.initial_state", "neel")
    try:
        initial_bits(initial_state, n_sites)
    except ValueError as exc:
        raise ConfigRangeError("run.initial_state", str(exc)) from None
    epsilon_grid = (
        _to_epsilon_grid("run.epsilon_grid", entries["run.epsilon_grid"])
        if "run.epsilon_grid" in entries
        else RunConfig.__dataclass_fields__["epsilon_grid"].default
    )
    window = _to_choice("run.window", entries.get("run.window", "none"), ("none", "hann"))
    aggregate = _to_choice(
        "run.aggregate", entries.get("run.aggregate", "per-site"), ("per-site", "averaged")
    )
    workers = non_negative_int("run.workers", 1, minimum=1)

    if command == "compare" and g >= 1.0:
        raise ConfigRangeError(
            "model.g", f"compare needs a pulse deviation (g < 1), got {g}"
        )

    output_dir = entries.get(
        "output.dir", os.environ.get(OUTPUT_ENV_VAR, DEFAULT_OUTPUT_DIR)
    )
    plot = _to_bool("output.plot", entries.get("output.plot", "false"))

    return RunConfig(
        command=command,
        model=model,
        periods=periods,
        realizations=realizations,
        initial_state=initial_state,
        epsilon_grid=epsilon_grid,
        window=window,
        aggregate=aggregate,
        workers=workers,
        output_dir=output_dir,
        plot=plot,
    )


def load_config(
    command: str | None,
    path: str | None = None,
    sets: list | None = None,
    plot: bool = False,
) -> RunConfig:
    """Resolve a run from an optional config file plus --set overrides."""
    entries = parse_config_file(path) if path else {}
    for assignment in sets or []:
        key, value = parse_assignment(assignment)
        entries[key] = value
    config = resolve_config(entries, command=command)
    if plot and not config.plot:
        config = replace(config, plot=True)
    return config
