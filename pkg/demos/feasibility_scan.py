"""Scan the (frequency, distance) plane for feasible operating points.

A point is feasible when the decoherence time exceeds ten exchange
times and the signal stands ten times above the Johnson noise. The
script prints a coarse text map and the two boundary contours.

For a normal-metal wire at 10 K the map comes out empty. The ratio
criterion holds above its contour while the SNR criterion holds below
its own, and the SNR contour lies lower everywhere. The closing lines
print the gap between them.

Run with ``python3 demos/feasibility_scan.py``.
"""

from ioncoupling import parse_config
from ioncoupling.feasibility import GridSpec, feasibility_map

cfg = parse_config({"trap": {"electrode_temperature": 10.0}})
grid = GridSpec(f_min=1e6, f_max=1e8, d_min=1e-5, d_max=1e-3, nf=12, nd=10)
fmap = feasibility_map(cfg, grid)

print("rows: distance (um), columns: frequency from 1 MHz to 100 MHz; # feasible")
for i_d, d in enumerate(fmap.d):
    cells = "".join("#" if ok else "." for ok in fmap.feasible[i_d])
    print(f"{d * 1e6:8.1f}  {cells}")

print("\nratio contour (t_deco = 10 t_ex):")
for d, f in fmap.contour_ratio[::3]:
    print(f"  d = {d * 1e6:7.1f} um  f = {f / 1e6:9.3g} MHz")
print("SNR contour (V_sig = 10 V_JN):")
for d, f in fmap.contour_snr[::3]:
    print(f"  d = {d * 1e6:7.1f} um  f = {f / 1e6:9.3g} MHz")

gap = fmap.contour_ratio[:, 1] / fmap.contour_snr[:, 1]
print(f"\nratio contour sits {gap.min():.3g} to {gap.max():.3g} times above the SNR contour")
