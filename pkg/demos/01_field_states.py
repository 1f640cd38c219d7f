# %% [markdown]
# # Field states
#
# Fock, binomial and truncated coherent states all live on a finite
# photon-number basis. Each constructor checks normalization.

# %%
import numpy as np

from orthospeed import fieldstates as fs

fock = fs.make_fock(3)
print(fock.describe(), fock.amplitudes)

# %% [markdown]
# A binomial state with parameters (mu, eta) has mean photon number
# mu * eta**2. It interpolates between the vacuum (eta -> 0) and the
# Fock state |mu> (eta -> 1).

# %%
for eta in (0.001, 0.3, 0.8, 1.0):
    b = fs.make_binomial(10, eta)
    print(f"eta={eta:<6} mean n = {fs.mean_photon(b):.6f}  expected {10 * eta**2:.6f}")

# %% [markdown]
# The coherent state is cut where the Poisson tail drops below `tail_tol`,
# then renormalized.

# %%
coh = fs.make_coherent_approx(4.0, tail_tol=1e-12)
print(coh.describe(), "truncation", coh.truncation)
print("largest probability at n =", int(np.argmax(coh.probabilities)))
