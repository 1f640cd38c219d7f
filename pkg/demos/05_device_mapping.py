# %% [markdown]
# # From a Cooper-pair box to (g, delta)
#
# Circuit capacitances, the Josephson energy and the field frequency fix the
# dimensionless coupling and detuning.

# %%
from scipy import constants

from orthospeed.device import DeviceParams, device_summary, model_params

omega = 2 * constants.pi * 5e9
dev = DeviceParams(C_g=2e-18, C_J=1e-18, C_F=1e-15, E_J=1.1 * constants.hbar * omega, omega=omega)
for key, value in device_summary(dev).items():
    print(f"{key:>16}: {value}")

# %% [markdown]
# The two printed forms of the coupling differ by sqrt(2) e / (4 C_J), so
# they cannot both hold. The capacitance form is used.

# %%
print(model_params(dev))

# %% [markdown]
# When the charging energy no longer dominates, the mapping still runs but
# warns.

# %%
import warnings

big = DeviceParams(C_g=2e-15, C_J=1e-15, C_F=1e-15, E_J=1.1 * constants.hbar * omega, omega=omega)
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    model_params(big)
print([str(w.message) for w in caught])
