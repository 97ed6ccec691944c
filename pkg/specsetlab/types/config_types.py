from dataclasses import dataclass, field
from typing import List


@dataclass
class JsonRepositoryConfig:
    dir: str = "data/instances/annulus_jordan.json"


@dataclass
class RandomRepositoryConfig:
    kind: str = "annulus"
    n_dim: int = 4
    seed: int = 0
    radius: float = 2.0
    theta: float = 1.0471975511965976
    n_disks: int = 3
    degree: int = 3
    block_size: int = 1


@dataclass
class EnlargeDisksManipulatorConfig:
    epsilon: float = 1e-6


@dataclass
class CompilerConfig:
    loglevel: str = "warning"
    repo: str = "JsonRepository"
    validator: str = "InstanceSchemaValidator"
    manipulators: List[str] = field(default_factory=lambda: ["DummyManipulator"])
    check_hypotheses: bool = True
    json_repository: JsonRepositoryConfig = field(default_factory=JsonRepositoryConfig)
    random_repository: RandomRepositoryConfig = field(default_factory=RandomRepositoryConfig)
    enlarge_disks_manipulator: EnlargeDisksManipulatorConfig = field(
        default_factory=EnlargeDisksManipulatorConfig
    )


@dataclass
class GeometryConfig:
    loglevel: str = "warning"
    abs_tol: float = 1e-12
    tangency_tol: float = 1e-9
    tie_tol: float = 1e-9


@dataclass
class QuadratureConfig:
    loglevel: str = "warning"
    tolerance: float = 1e-9
    max_panels: int = 4000
    initial_panels: int = 4


@dataclass
class SupNormConfig:
    loglevel: str = "warning"
    samples: int = 64
    rel_tol: float = 1e-6
    max_refinements: int = 200


@dataclass
class DecompositionConfig:
    loglevel: str = "warning"
    touch_margin: float = 1e-8
    epsilon_factor: float = 1e-6


@dataclass
class CampaignConfig:
    loglevel: str = "warning"
    workers: int = 4
    n_dim: int = 4
    radius: float = 2.0
    theta: float = 1.0471975511965976
    degree: int = 3
    block_size: int = 1
    bound_slack: float = 1e-6
    defect_tol: float = 1e-7
    psd_tol: float = 1e-10
    identity_tol: float = 1e-8
    kernel_samples: int = 64


@dataclass
class BoundsConfig:
    loglevel: str = "warning"
    rmin: float = 1.01
    rmax: float = 10.0
    steps: int = 200
    gamma_tol: float = 1e-15
    gamma_max_terms: int = 10000


@dataclass
class ExportConfig:
    loglevel: str = "warning"
    viewport: List[float] = field(default_factory=lambda: [-3.0, -3.0, 3.0, 3.0])
    samples_per_arc: int = 256


@dataclass
class Config:
    title: str = "specsetlab"
    default_loglevel: str = "warning"
    compiler: CompilerConfig = field(default_factory=CompilerConfig)
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    sup_norm: SupNormConfig = field(default_factory=SupNormConfig)
    decomposition: DecompositionConfig = field(default_factory=DecompositionConfig)
    campaign: CampaignConfig = field(default_factory=CampaignConfig)
    bounds: BoundsConfig = field(default_factory=BoundsConfig)
    export: ExportConfig = field(default_factory=ExportConfig)
