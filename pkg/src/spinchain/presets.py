"""Bundled reproduction presets for the reference figure set.

All presets share one experimentally feasible parameter bundle: identical
resonators with m = 2 ng, omega_m = 200 MHz, gamma_m = 0.2 MHz,
omega_c = 193.5 THz, Q = 3e7 (kappa_ex = omega_c/Q = 6.45 MHz,
kappa_in = kappa_ex), r = 0.25 mm, n = 1.44, xi = omega_c/r, and a 10 W pump.

Values the figure set implies but never prints are reconstructed here and
documented per preset:
* the pump frequency is locked so the non-spinning chain sits on the red
  sideband (transparency peak at delta_p = 0), see
  :func:`spinchain.params.omit_pump_frequency`;
* fig2a sweeps the inter-resonator coupling over J/kappa_ex in {0.2, 1, 2}
  next to the single-resonator curve (the two printed anchors are J =
  kappa_ex and J = 2 kappa_ex; 0.2 fills in the weak-coupling trend);
* spectrum grids span +-40 MHz (double that for the 100 kHz presets, whose
  features sit near -60 MHz); fig4 magnifies the dip region [-75, -20] MHz;
* metric sweeps run at delta_p = +10 MHz over |Omega| in [0, 120] kHz.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import (
    ChainConfig,
    DriveSpec,
    ResonatorSpec,
    kappa_ex_from_quality,
    omit_pump_frequency,
)

OMEGA_C = 193.5e12
QUALITY = 3e7
KAPPA_EX = kappa_ex_from_quality(OMEGA_C, QUALITY)
RADIUS = 0.25e-3
PUMP_POWER = 10.0
PROBE_POWER = 1e-6
METRICS_DELTA_P = 10e6


@dataclass(frozen=True)
class SpectrumCurve:
    label: str
    config: ChainConfig


@dataclass(frozen=True)
class MetricsCurve:
    label: str
    config: ChainConfig  # spin signs give the direction pattern


@dataclass(frozen=True)
class Preset:
    figure_id: str
    description: str
    kind: str  # "spectrum" | "metrics"
    curves: tuple
    # spectrum presets
    dp_min_hz: float = 0.0
    dp_max_hz: float = 0.0
    points: int = 0
    # metrics presets
    mode: str = ""
    delta_p_hz: float = 0.0
    omega_min_hz: float = 0.0
    omega_max_hz: float = 0.0


def reference_resonator(spin_rate: float = 0.0) -> ResonatorSpec:
    """One resonator of the shared reference bundle."""
    return ResonatorSpec(
        mass=2e-12,
        omega_m=200e6,
        gamma_m=0.2e6,
        omega_c=OMEGA_C,
        kappa_in=KAPPA_EX,
        radius=RADIUS,
        refractive_index=1.44,
        dn_dlambda=0.0,
        spin_rate=spin_rate,
        xi=OMEGA_C / RADIUS,
    )


def reference_drive() -> DriveSpec:
    omega_l = omit_pump_frequency(reference_resonator(), KAPPA_EX, PUMP_POWER)
    return DriveSpec(
        omega_l=omega_l,
        pump_power=PUMP_POWER,
        probe_power=PROBE_POWER,
        kappa_ex=KAPPA_EX,
        probe_direction="forward",
        pump_all=True,
    )


def reference_chain(
    spins: tuple[float, ...], coupling: float = KAPPA_EX
) -> ChainConfig:
    """Chain of identical reference resonators with the given spin rates."""
    resonators = tuple(reference_resonator(s) for s in spins)
    couplings = tuple(coupling for _ in range(len(spins) - 1))
    return ChainConfig(
        resonators=resonators, couplings=couplings, drive=reference_drive()
    )


def _spin_label(spin: float) -> str:
    if spin == 0:
        return "0"
    sign = "p" if spin > 0 else "m"
    return f"{sign}{abs(spin) / 1e3:g}k"


def _spectrum_curves(spin_sets: list[tuple[float, ...]]) -> tuple[SpectrumCurve, ...]:
    curves = []
    for spins in spin_sets:
        label = "n{}_omega_{}".format(len(spins), "_".join(_spin_label(s) for s in spins))
        curves.append(SpectrumCurve(label=label, config=reference_chain(spins)))
    return tuple(curves)


_METRIC_PATTERNS = [
    ("n1_cw", (1.0,)),
    ("n1_ccw", (-1.0,)),
    ("n2_cw_cw", (1.0, 1.0)),
    ("n2_cw_ccw", (1.0, -1.0)),
    ("n2_ccw_cw", (-1.0, 1.0)),
    ("n2_ccw_ccw", (-1.0, -1.0)),
    ("n2_cw_rest", (1.0, 0.0)),
    ("n2_ccw_rest", (-1.0, 0.0)),
]


def _metrics_curves() -> tuple[MetricsCurve, ...]:
    return tuple(
        MetricsCurve(label=label, config=reference_chain(pattern))
        for label, pattern in _METRIC_PATTERNS
    )


def _build_fig2a() -> Preset:
    curves = [SpectrumCurve("n1", reference_chain((0.0,)))]
    for ratio, tag in ((0.2, "0p2"), (1.0, "1"), (2.0, "2")):
        curves.append(
            SpectrumCurve(
                f"n2_j{tag}", reference_chain((0.0, 0.0), coupling=ratio * KAPPA_EX)
            )
        )
    return Preset(
        figure_id="fig2a",
        description="no spin: single resonator and coupled pair at J/kappa_ex in {0.2, 1, 2}",
        kind="spectrum",
        curves=tuple(curves),
        dp_min_hz=-40e6,
        dp_max_hz=40e6,
        points=2001,
    )


def _build_fig2b() -> Preset:
    spin_sets = [(40e3, 40e3), (40e3, -40e3), (40e3, 0.0)]
    return Preset(
        figure_id="fig2b",
        description="bottom resonator clockwise at 40 kHz, upper co-/counter-spinning or at rest",
        kind="spectrum",
        curves=_spectrum_curves(spin_sets),
        dp_min_hz=-40e6,
        dp_max_hz=40e6,
        points=2001,
    )


def _build_fig2c() -> Preset:
    spin_sets = [(-40e3, -40e3), (-40e3, 40e3), (-40e3, 0.0)]
    return Preset(
        figure_id="fig2c",
        description="mirror of fig2b: bottom resonator counter-clockwise at 40 kHz",
        kind="spectrum",
        curves=_spectrum_curves(spin_sets),
        dp_min_hz=-40e6,
        dp_max_hz=40e6,
        points=2001,
    )


def _build_fig3a() -> Preset:
    spin_sets = [(100e3,), (-100e3,), (0.0,)]
    return Preset(
        figure_id="fig3a",
        description="single resonator at |Omega| = 100 kHz, both spin directions",
        kind="spectrum",
        curves=_spectrum_curves(spin_sets),
        dp_min_hz=-80e6,
        dp_max_hz=80e6,
        points=4001,
    )


def _build_fig3b() -> Preset:
    spin_sets = [(100e3, 100e3), (-100e3, -100e3), (100e3, 0.0)]
    return Preset(
        figure_id="fig3b",
        description="coupled pair at |Omega| = 100 kHz spinning in the same direction",
        kind="spectrum",
        curves=_spectrum_curves(spin_sets),
        dp_min_hz=-80e6,
        dp_max_hz=80e6,
        points=4001,
    )


def _build_fig3c() -> Preset:
    spin_sets = [(100e3, -100e3), (-100e3, 100e3), (-100e3, 0.0)]
    return Preset(
        figure_id="fig3c",
        description="coupled pair at |Omega| = 100 kHz spinning in opposite directions",
        kind="spectrum",
        curves=_spectrum_curves(spin_sets),
        dp_min_hz=-80e6,
        dp_max_hz=80e6,
        points=4001,
    )


def _build_fig4() -> Preset:
    spin_sets = [
        (100e3, 100e3),
        (-100e3, -100e3),
        (100e3, -100e3),
        (-100e3, 100e3),
    ]
    return Preset(
        figure_id="fig4",
        description="magnified dip region of the 100 kHz coupled-pair spectra",
        kind="spectrum",
        curves=_spectrum_curves(spin_sets),
        dp_min_hz=-75e6,
        dp_max_hz=-20e6,
        points=2001,
    )


def _build_fig5() -> Preset:
    return Preset(
        figure_id="fig5",
        description="transmission enhancement factor versus spin rate at delta_p = 10 MHz",
        kind="metrics",
        curves=_metrics_curves(),
        mode="ef",
        delta_p_hz=METRICS_DELTA_P,
        omega_min_hz=0.0,
        omega_max_hz=120e3,
        points=121,
    )


def _build_fig6() -> Preset:
    return Preset(
        figure_id="fig6",
        description="probe group delay versus spin rate at delta_p = 10 MHz",
        kind="metrics",
        curves=_metrics_curves(),
        mode="tau",
        delta_p_hz=METRICS_DELTA_P,
        omega_min_hz=0.0,
        omega_max_hz=120e3,
        points=121,
    )


_BUILDERS = {
    "fig2a": _build_fig2a,
    "fig2b": _build_fig2b,
    "fig2c": _build_fig2c,
    "fig3a": _build_fig3a,
    "fig3b": _build_fig3b,
    "fig3c": _build_fig3c,
    "fig4": _build_fig4,
    "fig5": _build_fig5,
    "fig6": _build_fig6,
}

FIGURE_IDS = tuple(sorted(_BUILDERS))


def get_preset(figure_id: str) -> Preset:
    try:
        builder = _BUILDERS[figure_id]
    except KeyError:
        raise KeyError(figure_id) from None
    return builder()


def spectrum_grid(preset: Preset) -> np.ndarray:
    return np.linspace(preset.dp_min_hz, preset.dp_max_hz, preset.points)


def omega_grid(preset: Preset) -> np.ndarray:
    return np.linspace(preset.omega_min_hz, preset.omega_max_hz, preset.points)
