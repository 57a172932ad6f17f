"""Walk through the reference design point step by step.

Two beryllium ions sit 50 um above gold pickup disks joined by a 1 cm
wire. The script prints the coupling constant, the exchange time, the
heating-limited decoherence time and the signal-to-noise ratio.

Run with ``python3 demos/design_point.py``.
"""

import math

from ioncoupling import parse_config
from ioncoupling.capnet import wire_capacitance
from ioncoupling.coupling import exchange_time, gamma_symmetric, optimal_disk_radius
from ioncoupling.heating import decoherence_time
from ioncoupling.noise import signal_noise_budget

cfg = parse_config({})
ion, trap, geom = cfg.ion, cfg.trap, cfg.coupler
f, d, T = trap.secular_frequency, trap.ion_distance, trap.electrode_temperature

C_b = wire_capacitance(geom.wire_length, geom.wire_radius)
r = d / math.sqrt(2)
gamma = gamma_symmetric(ion.charge, d, r, C_b)
print(f"wire capacitance      C_b    = {C_b:.3e} F")
print(f"disk radius           r      = {r * 1e6:.1f} um")
print(f"coupling constant     gamma  = {gamma:.3e} N/m")

t_ex = exchange_time(gamma, ion, f)
print(f"exchange time         t_ex   = {t_ex * 1e3:.0f} ms")

r_opt = optimal_disk_radius(d, C_b)
print(f"optimal disk radius   r_opt  = {r_opt * 1e6:.1f} um "
      f"(gamma = {gamma_symmetric(ion.charge, d, r_opt, C_b):.3e} N/m)")

t_deco = decoherence_time(cfg.heating, ion, f, d, T)
print(f"decoherence time      t_deco = {t_deco:.2f} s, ratio {t_deco / t_ex:.1f}")

budget = signal_noise_budget(ion, geom, f, d, T, trap.motional_bandwidth)
print(f"signal voltage        V_sig  = {budget.v_sig:.3e} V")
print(f"Johnson noise         V_JN   = {budget.v_jn:.3e} V")
