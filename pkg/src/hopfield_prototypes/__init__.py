"""Hopfield networks with Hebbian learning and prototype-formation analysis."""

from .datagen import DatasetConfig, PrototypeDataset, generate, noisy_copy, probes_for, random_state
from .experiments import (
    EnergyProfile,
    ExperimentResult,
    RecallCensus,
    classify_states,
    distance_to_nearest_base,
    energy_profiles,
    grid_search,
    manhattan,
    run_experiment,
    run_probe_census,
)
from .learning import hebbian, hebbian_accumulate
from .network import (
    RelaxationResult,
    activation,
    is_stable,
    local_field,
    neuron_energy,
    relax,
    total_energy,
    update_neuron,
)
from .prototypes import (
    BernoulliProfile,
    DeltaMatrix,
    RepresentativeVector,
    agreement_factor,
    bernoulli_profile,
    decompose,
    pairwise_factor,
    predicted_representative_term,
    representative,
)
from .theory import (
    CapacityQuery,
    StabilityQuery,
    capacity_ratio,
    erf,
    p_error,
    p_error_single,
    theory_curve,
)

__version__ = "0.1.0"
