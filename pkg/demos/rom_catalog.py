"""Evaluate the shipped reduced-order models.

Prints every catalog model at the centre of the input box, then sweeps the
log10 mobility for pore pressure at P1, the variable that dominates it.
"""
import numpy as np

from porosol.inputs import BOX, VARIABLES
from porosol.rom import catalog, catalog_rom, eval_rom


def main():
    centre = np.array([0.5 * (lo + hi) for lo, hi in BOX])
    print("value at the box centre")
    for rom in catalog():
        print(f"  {rom.point} {rom.quantity:<14} {eval_rom(rom, centre) / 1e6:8.3f} MPa"
              f"   ({' + '.join(c.name() for c in rom.components)})")

    rom = catalog_rom("pore_pressure", "P1")
    k = VARIABLES.index("kappa")
    print("\npore pressure at P1 against log10 mobility")
    for lk in np.linspace(*BOX[k], 8):
        x = centre.copy()
        x[k] = lk
        print(f"  kappa = 1e{lk:6.2f}  p = {eval_rom(rom, x) / 1e6:8.3f} MPa")


if __name__ == "__main__":
    main()
