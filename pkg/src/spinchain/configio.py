"""Strict parser and emitter for the run configuration text format.

Format: UTF-8 text, ``key = value`` lines grouped under ``[resonator.k]``
(k = 1..N), ``[drive]`` and ``[chain]`` sections.  Blank lines and lines
starting with ``#`` are ignored.  Unknown keys, unknown sections, missing
keys and malformed values are all hard errors that name the offending
key and line.  Parsing a file and re-emitting it preserves every value to
full precision (values are stored exactly as parsed, no unit conversion).
"""

from __future__ import annotations

from .errors import ConfigError
from .params import ChainConfig, DriveSpec, ResonatorSpec

RESONATOR_KEYS = (
    "mass_kg",
    "omega_m_hz",
    "gamma_m_hz",
    "omega_c_hz",
    "kappa_in_hz",
    "radius_m",
    "refractive_index",
    "dn_dlambda_per_m",
    "spin_rate_hz",
    "xi_hz_per_m",
)

DRIVE_KEYS = (
    "omega_l_hz",
    "pump_power_w",
    "probe_power_w",
    "kappa_ex_hz",
    "probe_direction",
    "pump_all",
)

CHAIN_KEYS = ("coupling_j_hz",)


def _parse_float(key: str, raw: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"key '{key}': not a number: {raw!r}", line) from None


def _parse_bool(key: str, raw: str, line: int) -> bool:
    low = raw.strip().lower()
    if low in ("true", "false"):
        return low == "true"
    raise ConfigError(f"key '{key}': expected true or false, got {raw!r}", line)


def parse_config(text: str) -> ChainConfig:
    """Parse config text into a :class:`ChainConfig`.

    Raises :class:`ConfigError` naming the offending key/line on any
    deviation from the schema.
    """
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current: str | None = None
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current in sections:
                raise ConfigError(f"duplicate section [{current}]", lineno)
            sections[current] = {}
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        if current is None:
            raise ConfigError(f"key outside any section: {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if key in sections[current]:
            raise ConfigError(f"duplicate key '{key}' in [{current}]", lineno)
        sections[current][key] = (value, lineno)

    res_names = sorted(
        (s for s in sections if s.startswith("resonator.")),
        key=lambda s: int(s.split(".", 1)[1]) if s.split(".", 1)[1].isdigit() else -1,
    )
    known = set(res_names) | {"drive", "chain"}
    for s in sections:
        if s not in known:
            raise ConfigError(f"unknown section [{s}]")
    if not res_names:
        raise ConfigError("no [resonator.k] sections found")
    for i, s in enumerate(res_names, start=1):
        suffix = s.split(".", 1)[1]
        if not suffix.isdigit() or int(suffix) != i:
            raise ConfigError(
                f"resonator sections must be numbered 1..N without gaps; got [{s}]"
            )
    if "drive" not in sections:
        raise ConfigError("missing [drive] section")

    def take(section: str, allowed: tuple[str, ...]) -> dict[str, tuple[str, int]]:
        entries = sections[section]
        for key, (_, lineno) in entries.items():
            if key not in allowed:
                raise ConfigError(f"unknown key '{key}' in [{section}]", lineno)
        for key in allowed:
            if key not in entries:
                raise ConfigError(f"missing key '{key}' in [{section}]")
        return entries

    resonators = []
    for s in res_names:
        entries = take(s, RESONATOR_KEYS)
        vals = {k: _parse_float(k, v, ln) for k, (v, ln) in entries.items()}
        resonators.append(
            ResonatorSpec(
                mass=vals["mass_kg"],
                omega_m=vals["omega_m_hz"],
                gamma_m=vals["gamma_m_hz"],
                omega_c=vals["omega_c_hz"],
                kappa_in=vals["kappa_in_hz"],
                radius=vals["radius_m"],
                refractive_index=vals["refractive_index"],
                dn_dlambda=vals["dn_dlambda_per_m"],
                spin_rate=vals["spin_rate_hz"],
                xi=vals["xi_hz_per_m"],
            )
        )

    entries = take("drive", DRIVE_KEYS)
    raw_dir, ln_dir = entries["probe_direction"]
    drive = DriveSpec(
        omega_l=_parse_float("omega_l_hz", *entries["omega_l_hz"]),
        pump_power=_parse_float("pump_power_w", *entries["pump_power_w"]),
        probe_power=_parse_float("probe_power_w", *entries["probe_power_w"]),
        kappa_ex=_parse_float("kappa_ex_hz", *entries["kappa_ex_hz"]),
        probe_direction=raw_dir.strip(),
        pump_all=_parse_bool("pump_all", *entries["pump_all"]),
    )
    if drive.probe_direction not in ("forward", "backward"):
        raise ConfigError(
            f"key 'probe_direction': expected forward or backward, got {raw_dir!r}",
            ln_dir,
        )

    couplings: list[float] = []
    if "chain" in sections:
        entries = take("chain", CHAIN_KEYS)
        raw, ln = entries["coupling_j_hz"]
        if raw:
            couplings = [
                _parse_float("coupling_j_hz", part.strip(), ln)
                for part in raw.split(",")
            ]
    if len(couplings) != len(resonators) - 1:
        raise ConfigError(
            f"coupling_j_hz must list {len(resonators) - 1} values for "
            f"{len(resonators)} resonators, got {len(couplings)}"
        )

    return ChainConfig(
        resonators=tuple(resonators), couplings=tuple(couplings), drive=drive
    )


def emit_config(config: ChainConfig, header: str | None = None) -> str:
    """Serialize a :class:`ChainConfig` back to config text.

    Numbers are written with ``repr`` so they parse back bit-identically.
    """
    lines: list[str] = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
        lines.append("")
    for i, r in enumerate(config.resonators, start=1):
        lines.append(f"[resonator.{i}]")
        lines.append(f"mass_kg = {r.mass!r}")
        lines.append(f"omega_m_hz = {r.omega_m!r}")
        lines.append(f"gamma_m_hz = {r.gamma_m!r}")
        lines.append(f"omega_c_hz = {r.omega_c!r}")
        lines.append(f"kappa_in_hz = {r.kappa_in!r}")
        lines.append(f"radius_m = {r.radius!r}")
        lines.append(f"refractive_index = {r.refractive_index!r}")
        lines.append(f"dn_dlambda_per_m = {r.dn_dlambda!r}")
        lines.append(f"spin_rate_hz = {r.spin_rate!r}")
        lines.append(f"xi_hz_per_m = {r.xi!r}")
        lines.append("")
    d = config.drive
    lines.append("[drive]")
    lines.append(f"omega_l_hz = {d.omega_l!r}")
    lines.append(f"pump_power_w = {d.pump_power!r}")
    lines.append(f"probe_power_w = {d.probe_power!r}")
    lines.append(f"kappa_ex_hz = {d.kappa_ex!r}")
    lines.append(f"probe_direction = {d.probe_direction}")
    lines.append(f"pump_all = {'true' if d.pump_all else 'false'}")
    if config.couplings:
        lines.append("")
        lines.append("[chain]")
        lines.append(
            "coupling_j_hz = " + ", ".join(repr(j) for j in config.couplings)
        )
    lines.append("")
    return "\n".join(lines)


def config_to_dict(config: ChainConfig) -> dict:
    """JSON-ready snapshot using the config-file keys and units."""
    return {
        "resonators": [
            {
                "mass_kg": r.mass,
                "omega_m_hz": r.omega_m,
                "gamma_m_hz": r.gamma_m,
                "omega_c_hz": r.omega_c,
                "kappa_in_hz": r.kappa_in,
                "radius_m": r.radius,
                "refractive_index": r.refractive_index,
                "dn_dlambda_per_m": r.dn_dlambda,
                "spin_rate_hz": r.spin_rate,
                "xi_hz_per_m": r.xi,
            }
            for r in config.resonators
        ],
        "drive": {
            "omega_l_hz": config.drive.omega_l,
            "pump_power_w": config.drive.pump_power,
            "probe_power_w": config.drive.probe_power,
            "kappa_ex_hz": config.drive.kappa_ex,
            "probe_direction": config.drive.probe_direction,
            "pump_all": config.drive.pump_all,
        },
        "coupling_j_hz": list(config.couplings),
    }


def config_from_dict(data: dict) -> ChainConfig:
    """Inverse of :func:`config_to_dict`."""
    try:
        resonators = tuple(
            ResonatorSpec(
                mass=r["mass_kg"],
                omega_m=r["omega_m_hz"],
                gamma_m=r["gamma_m_hz"],
                omega_c=r["omega_c_hz"],
                kappa_in=r["kappa_in_hz"],
                radius=r["radius_m"],
                refractive_index=r["refractive_index"],
                dn_dlambda=r["dn_dlambda_per_m"],
                spin_rate=r["spin_rate_hz"],
                xi=r["xi_hz_per_m"],
            )
            for r in data["resonators"]
        )
        d = data["drive"]
        drive = DriveSpec(
            omega_l=d["omega_l_hz"],
            pump_power=d["pump_power_w"],
            probe_power=d["probe_power_w"],
            kappa_ex=d["kappa_ex_hz"],
            probe_direction=d["probe_direction"],
            pump_all=d["pump_all"],
        )
        couplings = tuple(data["coupling_j_hz"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed config dict: {exc}") from exc
    return ChainConfig(resonators=resonators, couplings=couplings, drive=drive)


def load_config(path: str) -> ChainConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def save_config(config: ChainConfig, path: str, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_config(config, header))
