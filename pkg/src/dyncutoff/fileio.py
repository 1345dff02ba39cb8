"""Extended-XYZ frames, run-configuration documents, and CSV helpers.

The XYZ grammar: an atom-count line, a comment line that may carry
``Lattice="ax ay az bx by bz cx cy cz"`` (row-major lattice vectors) and
``pbc="T T T"``, then one line per atom: ``symbol x y z [vx vy vz]``.

Run configurations are flat ``key = value`` documents with ``#`` comments.
Unknown keys are rejected so typos fail loudly.
"""

from __future__ import annotations

import re

import numpy as np

from .elements import ATOMIC_NUMBERS, SYMBOLS, mass_of
from .errors import ParseError
from .geometry import AtomicSystem, Cell, nonperiodic_cell

__all__ = [
    "read_xyz",
    "write_xyz",
    "parse_config",
    "read_config",
    "config_value",
    "require_keys",
    "CONFIG_KEYS",
    "fmt_real",
]

_LATTICE_RE = re.compile(r'Lattice\s*=\s*"([^"]*)"', re.IGNORECASE)
_PBC_RE = re.compile(r'pbc\s*=\s*"([^"]*)"', re.IGNORECASE)


def fmt_real(x):
    """17-significant-digit scientific notation; round-trips float64 exactly."""
    return f"{float(x):.16e}"


def _parse_comment_line(comment, lineno):
    lattice_match = _LATTICE_RE.search(comment)
    pbc_match = _PBC_RE.search(comment)
    if lattice_match is None:
        if pbc_match is not None:
            raise ParseError(lineno, 'pbc given without Lattice="..."')
        return nonperiodic_cell()
    fields = lattice_match.group(1).split()
    if len(fields) != 9:
        raise ParseError(
            lineno, f"Lattice must contain 9 reals, found {len(fields)}"
        )
    try:
        values = [float(f) for f in fields]
    except ValueError:
        raise ParseError(lineno, "Lattice contains a non-numeric field")
    basis = np.array(values).reshape(3, 3)
    periodic = (True, True, True)
    if pbc_match is not None:
        flags = pbc_match.group(1).split()
        if len(flags) != 3 or any(f not in ("T", "F") for f in flags):
            raise ParseError(lineno, 'pbc must be three T/F flags')
        periodic = tuple(f == "T" for f in flags)
    try:
        return Cell(basis, periodic)
    except ValueError as exc:
        raise ParseError(lineno, str(exc))


def read_xyz(path):
    """Read one extended-XYZ frame into an AtomicSystem."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(1, "empty file")
    try:
        count = int(lines[0].strip())
    except ValueError:
        raise ParseError(1, f"expected an atom count, found {lines[0]!r}")
    if count < 0:
        raise ParseError(1, "atom count must be >= 0")
    if len(lines) < 2 + count:
        raise ParseError(
            len(lines) + 1, f"expected {count} atom lines, file ends early"
        )
    cell = _parse_comment_line(lines[1] if len(lines) > 1 else "", 2)

    positions = np.zeros((count, 3))
    velocities = np.zeros((count, 3))
    species = np.zeros(count, dtype=np.int64)
    saw_velocities = False
    for i in range(count):
        lineno = 3 + i
        fields = lines[2 + i].split()
        if len(fields) not in (4, 7):
            raise ParseError(
                lineno, f"expected 'symbol x y z [vx vy vz]', found {len(fields)} fields"
            )
        symbol = fields[0]
        if symbol in ATOMIC_NUMBERS:
            z = ATOMIC_NUMBERS[symbol]
        else:
            try:
                z = int(symbol)
            except ValueError:
                raise ParseError(lineno, f"unknown element symbol {symbol!r}")
            if z not in SYMBOLS:
                raise ParseError(lineno, f"unknown atomic number {z}")
        try:
            values = [float(f) for f in fields[1:]]
        except ValueError:
            raise ParseError(lineno, "non-numeric coordinate")
        species[i] = z
        positions[i] = values[:3]
        if len(values) == 6:
            velocities[i] = values[3:]
            saw_velocities = True
    masses = np.array([mass_of(z) for z in species]) if count else np.zeros(0)
    return AtomicSystem(
        positions,
        species,
        masses,
        cell,
        velocities if saw_velocities else None,
    )


def write_xyz(path, system):
    """Write an AtomicSystem as one extended-XYZ frame."""
    lines = [str(system.n_atoms)]
    comment = ""
    if any(system.cell.periodic):
        flat = " ".join(fmt_real(x) for x in system.cell.basis.ravel())
        pbc = " ".join("T" if p else "F" for p in system.cell.periodic)
        comment = f'Lattice="{flat}" pbc="{pbc}"'
    lines.append(comment)
    has_vel = system.velocities is not None
    for i in range(system.n_atoms):
        sym = SYMBOLS.get(int(system.species[i]), str(int(system.species[i])))
        fields = [sym] + [fmt_real(x) for x in system.positions[i]]
        if has_vel:
            fields += [fmt_real(v) for v in system.velocities[i]]
        lines.append(" ".join(fields))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _as_bool(text):
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise ValueError(f"expected a boolean, found {text!r}")


#: key -> (type constructor, default or None when required by a subcommand)
CONFIG_KEYS = {
    # dynamic cutoff
    "h": (float, None),
    "alpha": (float, 10.0),
    "envelope_n": (int, 50),
    "mu": (float, 20.0),
    "sigma": (float, 4.0),
    "epsilon": (float, 1e-4),
    # pair potential
    "mode": (str, "fixed"),
    "n_max": (int, 20),
    "lj_epsilon": (float, 0.4),
    "lj_sigma": (float, 2.27),
    # molecular dynamics
    "dt": (float, 1.0),
    "steps": (int, None),
    "thermostat": (str, "none"),
    "friction": (float, 0.01),
    "temperature": (float, 0.0),
    "init_temperature": (float, None),
    "seed": (int, 0),
    "record_every": (int, 1),
    "rebuild_neighbors_every": (int, 1),
    # bench
    "timing_repetitions": (int, 7),
    # io
    "input": (str, None),
    "output_dir": (str, "."),
}


def parse_config(text):
    """Parse a ``key = value`` document into a typed dict.

    Unknown keys and malformed lines raise ParseError with the line number.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, f"expected 'key = value', found {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_KEYS:
            raise ParseError(lineno, f"unknown key {key!r}")
        ctor, _ = CONFIG_KEYS[key]
        try:
            if ctor is bool:
                values[key] = _as_bool(value)
            else:
                values[key] = ctor(value)
        except ValueError:
            raise ParseError(
                lineno, f"cannot parse value {value!r} for key {key!r}"
            )
    return values


def read_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_value(values, key):
    """Value for ``key`` from a parsed config, falling back to the default."""
    if key in values:
        return values[key]
    _, default = CONFIG_KEYS[key]
    return default


def require_keys(values, keys):
    """Raise ParseError when any of ``keys`` is absent and has no default."""
    missing = [
        k for k in keys if k not in values and CONFIG_KEYS[k][1] is None
    ]
    if missing:
        raise ParseError(0, f"missing required config keys: {', '.join(missing)}")
