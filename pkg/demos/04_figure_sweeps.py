# %% [markdown]
# # Event counts across parameter sweeps
#
# Each sweep cell evolves the qubit, scans the overlaps and counts the
# distinct orthogonality instants in the window (0, 40).

# %%
from orthospeed import ModelParams
from orthospeed.sweep import SweepConfig, run_sweep


def counts(axis, values, base, field):
    cfg = SweepConfig(base=base, field_spec=field, axis=axis, values=values, window=(0.0, 40.0), dt=0.005)
    return [(v, rep.total_events) for v, rep in run_sweep(cfg)]


# %% [markdown]
# Detuning and photon number both raise the count. Coupling strength does
# not act monotonically: the count drops sharply from g=0.1 to g=0.25, then
# creeps back up.

# %%
fock1 = {"kind": "fock", "n": 1}
print("g     ", counts("g", (0.1, 0.25, 0.35, 0.5), ModelParams(0.1, 1.0), fock1))
print("delta ", counts("delta", (0.3, 0.5, 1.0, 2.0), ModelParams(0.1, 1.0), fock1))
print("n     ", counts("n", (1, 3, 5, 10, 20), ModelParams(0.1, 0.3), fock1))

# %% [markdown]
# For a binomial field the count hardly moves with eta.

# %%
cfg = SweepConfig(
    base=ModelParams(0.01, 0.3),
    field_spec={"kind": "binomial", "mu": 10, "eta": 0.5},
    axis="eta",
    values=(0.001, 0.8),
    window=(0.0, 100.0),
    dt=0.01,
)
print("eta   ", [(v, rep.total_events) for v, rep in run_sweep(cfg)])
