"""Pressure drop and stress anisotropy along the midline between two producing fractures.

Runs the shipped rocks to one month, one year and five years and prints the
mean pressure drop between the fractures (region 1) and beyond their tips
(region 2).  Pass an output folder to also write the profile CSVs::

    python demos/depletion_profiles.py out/depletion
"""
import sys

from porosol.campaign import StudyConfig, run_depletion_study
from porosol.campaign.presets import FAR_FIELDS, HORIZON_SETS


def main(out_dir=None):
    cfg = StudyConfig(name="depletion demo", horizons=HORIZON_SETS["depletion"],
                      far_field=FAR_FIELDS["two_fracture"], far_field_preset="two_fracture",
                      rocks=("Berea Sandstone", "Weber Sandstone", "Tennessee Marble"),
                      profile_points=41, output_dir=out_dir)
    study = run_depletion_study(cfg)
    print(f"{'rock':<20} {'horizon':>7} {'region 1 dp':>12} {'region 2 dp':>12}"
          f" {'region 1 anisotropy':>20}")
    for rock in study.profiles:
        for h, _ in study.profiles[rock]:
            m = study.region_means(rock, h)
            print(f"{rock:<20} {h:>7} {m['region1_dp'] / 1e6:9.3f} MPa {m['region2_dp'] / 1e6:8.3f} MPa"
                  f" {m['region1_anisotropy'] / 1e6:16.3f} MPa")
    for rock, h, err in study.failures:
        print(f"failed: {rock} at {h}: {err}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
