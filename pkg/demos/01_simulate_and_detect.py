#!/usr/bin/env python3
"""Walkthrough: put a square no-data gap into each corner of an image
and read back what the detector says about it."""

from swathfill import GapPosition, GapSpec, detect, inject_gap
from swathfill.synthetic import make_image


def main():
    raster = make_image("harbor", seed=3, size=256)
    print(f"source image: {raster.width}x{raster.height}, no gap yet")
    _, stats = detect(raster)
    print(" ", stats.to_json())

    for position in list(GapPosition)[1:]:
        gapped, mask = inject_gap(raster, GapSpec(position, area_fraction=0.20))
        _, stats = detect(gapped)
        print(f"gap at {position.token}: fraction {mask.gap_fraction:.5f}")
        print(" ", stats.to_json())

    # the usability rule is strict: a quarter of the image is too much
    gapped, _ = inject_gap(raster, GapSpec(GapPosition.UPPER_LEFT, area_fraction=0.25))
    _, stats = detect(gapped)
    print("at the 0.25 cap:", stats.to_json())


if __name__ == "__main__":
    main()
