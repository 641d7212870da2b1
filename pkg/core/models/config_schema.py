"""
Run configuration file schema (TOML) and conversion to SimulationConfig
"""
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from core.errors import ConfigError, DloError
from core.models.dlo_models import (
    DloProperties,
    IntegratorKind,
    ScenarioKind,
    SimulationConfig,
    StepConfig,
)

logger = logging.getLogger(__name__)

ASSUMED_DEFAULT_FLAG = "[assumed-default]"

# Preset values without a published source are flagged when echoed
MATERIAL_PRESETS: Dict[str, Dict[str, float]] = {
    "aluminium": {
        "young_E": 69e9,
        "shear_G": 26e9,
        "density_rho": 2700.0,
        "spring_Kx": 1.0e4,
    },
    "soft_cable": {
        "young_E": 5.4e5,
        # torsion nearly free: geometric torsion stiffens sharply where curvature vanishes
        "shear_G": 1.0,
        "density_rho": 2700.0,
        "spring_Kx": 2.0,
    },
}
QUOTED_VALUES = {
    "aluminium": frozenset({"spring_Kx"}),
    "soft_cable": frozenset(),
}


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SimulationSection(_Section):
    """[simulation] resolution and horizon"""
    n_u: int = Field(9, ge=4, description="Number of control points")
    n_s: int = Field(101, ge=2, description="Number of sample points")
    duration: float = Field(10.0, gt=0, description="Simulated time (s)")
    record_stride: int = Field(1, ge=1, description="Record every k-th step")


class StepSection(_Section):
    """[step] time integration"""
    tau: float = Field(0.002, gt=0, description="Time step (s)")
    integrator: IntegratorKind = Field(IntegratorKind.SYMPLECTIC4, description="Stepper kind")
    zhai_psi: float = Field(0.5, description="Zhai displacement parameter")
    zhai_phi: float = Field(0.5, description="Zhai velocity parameter")


class MaterialSection(_Section):
    """[material] geometry and material; unset fields come from the preset"""
    preset: Literal["aluminium", "soft_cable"] = Field("aluminium", description="Material preset")
    length_L: float = Field(2.0, gt=0, description="Length (m)")
    diameter_D: float = Field(0.002, gt=0, description="Diameter (m)")
    young_E: Optional[float] = Field(None, gt=0, description="Young's modulus (Pa)")
    shear_G: Optional[float] = Field(None, gt=0, description="Shear modulus (Pa)")
    density_rho: Optional[float] = Field(None, gt=0, description="Density (kg/m³)")


class ScenarioSection(_Section):
    """[scenario] boundary conditions and loads"""
    kind: ScenarioKind = Field(ScenarioKind.GRAVITY_ONLY, description="Scenario kind")
    gravity: Tuple[float, float, float] = Field((0.0, 0.0, -9.81), description="Gravity (m/s²)")
    spring_Kx: Optional[float] = Field(None, ge=0, description="Endpoint spring stiffness (N/m)")
    force_amplitude_N: float = Field(1.0, description="Sinusoidal force amplitude (N)")
    force_frequency_Hz: float = Field(0.5, gt=0, description="Sinusoidal force frequency (Hz)")
    force_direction: Tuple[float, float, float] = Field((0.0, 1.0, 0.0), description="Force direction")
    force_apply_u: Optional[float] = Field(None, ge=0, description="Force location u (m), L/2 if unset")


class RunConfigFile(_Section):
    """Whole run configuration file"""
    simulation: SimulationSection = Field(default_factory=SimulationSection)
    step: StepSection = Field(default_factory=StepSection)
    material: MaterialSection = Field(default_factory=MaterialSection)
    scenario: ScenarioSection = Field(default_factory=ScenarioSection)

    def resolved_material(self) -> Dict[str, float]:
        preset = MATERIAL_PRESETS[self.material.preset]
        return {
            key: getattr(self.material, key) if getattr(self.material, key) is not None else preset[key]
            for key in ("young_E", "shear_G", "density_rho")
        }

    def resolved_spring_Kx(self) -> float:
        if self.scenario.spring_Kx is not None:
            return self.scenario.spring_Kx
        return MATERIAL_PRESETS[self.material.preset]["spring_Kx"]

    def _assumed_keys(self) -> set:
        """section.key names whose value is an implementer-chosen default"""
        flagged = set()
        quoted = QUOTED_VALUES[self.material.preset]
        for key in ("young_E", "shear_G", "density_rho"):
            if getattr(self.material, key) is None and key not in quoted:
                flagged.add(f"material.{key}")
        if self.scenario.spring_Kx is None and "spring_Kx" not in quoted:
            flagged.add("scenario.spring_Kx")
        if "gravity" not in self.scenario.model_fields_set:
            flagged.add("scenario.gravity")
        if self.scenario.kind is ScenarioKind.SINUSOIDAL_CENTER:
            for key in ("force_amplitude_N", "force_frequency_Hz"):
                if key not in self.scenario.model_fields_set:
                    flagged.add(f"scenario.{key}")
        if self.step.integrator is IntegratorKind.ZHAI:
            for key in ("zhai_psi", "zhai_phi"):
                if key not in self.step.model_fields_set:
                    flagged.add(f"step.{key}")
        return flagged

    def echo(self) -> Tuple[str, ...]:
        """`section.key = value` lines with assumed defaults flagged"""
        flagged = self._assumed_keys()
        values: Dict[str, Any] = {}
        for name in ("simulation", "step"):
            for key, value in getattr(self, name).model_dump(mode="json").items():
                values[f"{name}.{key}"] = value
        values["material.preset"] = self.material.preset
        values["material.length_L"] = self.material.length_L
        values["material.diameter_D"] = self.material.diameter_D
        for key, value in self.resolved_material().items():
            values[f"material.{key}"] = value
        scenario = self.scenario.model_dump(mode="json")
        scenario["spring_Kx"] = self.resolved_spring_Kx()
        if self.scenario.kind is ScenarioKind.SINUSOIDAL_CENTER:
            if scenario["force_apply_u"] is None:
                scenario["force_apply_u"] = self.material.length_L / 2.0
        else:
            for key in ("force_amplitude_N", "force_frequency_Hz", "force_direction", "force_apply_u"):
                scenario.pop(key)
        for key, value in scenario.items():
            values[f"scenario.{key}"] = value

        lines = []
        for key, value in values.items():
            line = f"{key} = {_render(value)}"
            if key in flagged:
                line = f"{line} {ASSUMED_DEFAULT_FLAG}"
            lines.append(line)
        return tuple(lines)

    def to_simulation_config(self) -> SimulationConfig:
        from core.scenarios.builder import build_scenario

        overrides: Dict[str, Any] = {
            "gravity": self.scenario.gravity,
            "spring_Kx": self.resolved_spring_Kx(),
        }
        if self.scenario.kind is ScenarioKind.SINUSOIDAL_CENTER:
            overrides.update(
                force_amplitude_N=self.scenario.force_amplitude_N,
                force_frequency_Hz=self.scenario.force_frequency_Hz,
                force_direction=self.scenario.force_direction,
            )
            if self.scenario.force_apply_u is not None:
                overrides["force_apply_u"] = self.scenario.force_apply_u

        try:
            properties = DloProperties(
                length_L=self.material.length_L,
                diameter_D=self.material.diameter_D,
                **self.resolved_material(),
            )
            step = StepConfig(
                tau=self.step.tau,
                integrator_kind=self.step.integrator,
                zhai_psi=self.step.zhai_psi,
                zhai_phi=self.step.zhai_phi,
            )
            scenario = build_scenario(
                self.scenario.kind, self.simulation.n_u, self.material.length_L, overrides
            )
            return SimulationConfig(
                n_u=self.simulation.n_u,
                n_s=self.simulation.n_s,
                duration=self.simulation.duration,
                step=step,
                properties=properties,
                scenario=scenario,
                record_stride=self.simulation.record_stride,
                echo=self.echo(),
            )
        except ConfigError:
            raise
        except DloError as e:
            raise ConfigError(str(e)) from e

    def with_overrides(self, **updates: Any) -> "RunConfigFile":
        """Copy with `section__key=value` updates, re-validated"""
        data = self.model_dump(exclude_unset=True)
        for dotted, value in updates.items():
            section, key = dotted.split("__", 1)
            data.setdefault(section, {})[key] = value
        return parse_run_config(data)


def _render(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return f'"{value}"'
    return str(value)


def _describe(error: ValidationError) -> str:
    parts: List[str] = []
    for item in error.errors():
        where = ".".join(str(loc) for loc in item["loc"])
        parts.append(f"{where}: {item['msg']}")
    return "; ".join(parts)


def parse_run_config(data: Dict[str, Any], source: Union[str, Path] = "<memory>") -> RunConfigFile:
    try:
        return RunConfigFile.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{source}: {_describe(e)}") from e


def load_run_config(path: Union[str, Path]) -> RunConfigFile:
    """Read and validate a TOML run configuration"""
    path = Path(path)
    with path.open("rb") as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{path}: {e}") from e
    config = parse_run_config(data, path)
    logger.info(f"Loaded run configuration from {path}")
    return config


def load_simulation_file(path: Union[str, Path]) -> SimulationConfig:
    return load_run_config(path).to_simulation_config()
