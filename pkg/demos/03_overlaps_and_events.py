# %% [markdown]
# # Overlaps and orthogonality events
#
# At every time the reduced qubit state is diagonalized. Sp_ij is the
# overlap between eigenvector i and initial basis vector j. An
# orthogonality event is a minimum of |Sp_ij| that reaches zero.

# %%
import numpy as np

from orthospeed import ModelParams, closed_form_rho, make_fock, overlap_trace
from orthospeed.sweep import run_cell

params = ModelParams(g=0.0, delta=1.0)
t = np.linspace(0, 20, 4001)
trace = overlap_trace(t, closed_form_rho(params, make_fock(2), t))
print("Sp at t=0:\n", trace.sp[0])

# %% [markdown]
# Without coupling the qubit only precesses, so |Sp_11| = |cos(t/2)| and
# events fall on odd multiples of pi.

# %%
_, report = run_cell(params, make_fock(2), (0.0, 20.0), 0.005)
for e in report.events:
    if e.pair == (1, 1):
        print(f"t = {e.t_event:.10f}   t/pi = {e.t_event / np.pi:.8f}")

# %% [markdown]
# Every instant shows up in two pairs because |Sp_11| = |Sp_22|. The report
# counts instants once.

# %%
print("per pair:", report.counts)
print("instants:", report.total_events, " speed:", report.speed)
