"""FastAPI service exposing the chain solvers to HTTP clients.

Stateless: every request carries its full configuration, every computation
is a pure function of the request body.  Error mapping: invalid
configurations are 400 with ``error = "config"``, solver failures are 422
with ``error = "solver"``.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import sweep_metrics, sweep_spectrum
from ..errors import ConfigError, SpinchainError
from ..presets import FIGURE_IDS, get_preset, omega_grid, spectrum_grid
from . import models

SPECTRUM_COLUMNS = ["delta_p_hz", "T", "phase_rad", "tau_g_s"]
METRICS_COLUMNS = ["omega_hz", "value"]


def _spectrum_payload(config, grid) -> dict[str, list[float]]:
    result = sweep_spectrum(config, grid)
    return {
        "delta_p_hz": result.grid.tolist(),
        "T": result.transmission.tolist(),
        "phase_rad": result.phase.tolist(),
        "tau_g_s": result.tau_g.tolist(),
    }


def _metrics_payload(config, delta_p_hz, omegas, mode) -> dict[str, list[float]]:
    points = sweep_metrics(config, delta_p_hz, omegas)
    values = {
        "ef": [p.ef for p in points],
        "gd": [p.gd for p in points],
        "tau": [p.tau_g for p in points],
    }[mode]
    return {"omega_hz": [p.omega_abs for p in points], "value": values}


def create_app() -> FastAPI:
    app = FastAPI(title="spinchain service", version=__version__)

    @app.exception_handler(ConfigError)
    async def _config_error(_: Request, exc: ConfigError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error": "config", "detail": str(exc)}
        )

    @app.exception_handler(SpinchainError)
    async def _solver_error(_: Request, exc: SpinchainError) -> JSONResponse:
        return JSONResponse(
            status_code=422, content={"error": "solver", "detail": str(exc)}
        )

    @app.get("/v1/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=__version__)

    @app.get("/v1/presets", response_model=models.PresetsResponse)
    def presets() -> models.PresetsResponse:
        infos = []
        for fig in FIGURE_IDS:
            preset = get_preset(fig)
            infos.append(
                models.PresetInfo(
                    figure_id=fig, kind=preset.kind, description=preset.description
                )
            )
        return models.PresetsResponse(figures=infos)

    @app.post("/v1/spectrum", response_model=models.SpectrumResponse)
    def spectrum(request: models.SpectrumRequest) -> models.SpectrumResponse:
        config = request.config.to_config()
        grid = np.linspace(request.dp_min_hz, request.dp_max_hz, request.points)
        payload = _spectrum_payload(config, grid)
        result_meta = {"tool": "spinchain", "version": __version__}
        return models.SpectrumResponse(
            delta_p_hz=payload["delta_p_hz"],
            transmission=payload["T"],
            phase_rad=payload["phase_rad"],
            tau_g_s=payload["tau_g_s"],
            meta=result_meta,
        )

    @app.post("/v1/metrics", response_model=models.MetricsResponse)
    def metrics(request: models.MetricsRequest) -> models.MetricsResponse:
        config = request.config.to_config()
        omegas = np.linspace(
            request.omega_min_hz, request.omega_max_hz, request.points
        )
        payload = _metrics_payload(config, request.delta_p_hz, omegas, request.mode)
        return models.MetricsResponse(
            omega_hz=payload["omega_hz"],
            value=payload["value"],
            mode=request.mode,
            meta={"tool": "spinchain", "version": __version__},
        )

    @app.post("/v1/reproduce", response_model=models.ReproduceResponse)
    def reproduce(request: models.ReproduceRequest) -> models.ReproduceResponse:
        try:
            preset = get_preset(request.figure_id)
        except KeyError:
            return JSONResponse(
                status_code=404,
                content={
                    "error": "config",
                    "detail": (
                        f"unknown figure id {request.figure_id!r}; "
                        f"valid ids: {', '.join(FIGURE_IDS)}"
                    ),
                },
            )
        curves = []
        if preset.kind == "spectrum":
            grid = spectrum_grid(preset)
            for curve in preset.curves:
                data = _spectrum_payload(curve.config, grid)
                curves.append(
                    models.CurvePayload(
                        label=curve.label,
                        columns=SPECTRUM_COLUMNS,
                        data={
                            "delta_p_hz": data["delta_p_hz"],
                            "T": data["T"],
                            "phase_rad": data["phase_rad"],
                            "tau_g_s": data["tau_g_s"],
                        },
                        config=models.ChainModel.from_config(curve.config),
                    )
                )
        else:
            omegas = omega_grid(preset)
            for curve in preset.curves:
                data = _metrics_payload(
                    curve.config, preset.delta_p_hz, omegas, preset.mode
                )
                curves.append(
                    models.CurvePayload(
                        label=curve.label,
                        columns=METRICS_COLUMNS,
                        data=data,
                        config=models.ChainModel.from_config(curve.config),
                    )
                )
        return models.ReproduceResponse(
            figure_id=preset.figure_id,
            kind=preset.kind,
            description=preset.description,
            curves=curves,
        )

    return app


app = create_app()
