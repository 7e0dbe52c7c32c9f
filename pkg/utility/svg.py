import xml.etree.ElementTree as ET
from importlib import metadata

SVG_NS = "http://www.w3.org/2000/svg"


def _version() -> str:
    try:
        return metadata.version("canard-lab")
    except metadata.PackageNotFoundError:
        return "dev"


def contours_to_svg(
    curves: list[tuple[float, list[complex]]],
    bbox: tuple[float, float, float, float],
    width: int = 600,
    marks: list[complex] | None = None,
) -> str:
    """One <path> per polyline in plane coordinates (imaginary axis pointing up)."""
    xmin, xmax, ymin, ymax = bbox
    height = int(round(width * (ymax - ymin) / (xmax - xmin)))
    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        width=str(width),
        height=str(height),
        viewBox=f"{xmin:.6f} {-ymax:.6f} {xmax - xmin:.6f} {ymax - ymin:.6f}",
    )
    stroke = (xmax - xmin) / width
    for level, polyline in curves:
        d = " ".join(
            f"{'M' if i == 0 else 'L'}{p.real:.6f},{-p.imag:.6f}" for i, p in enumerate(polyline)
        )
        ET.SubElement(
            root,
            "path",
            d=d,
            fill="none",
            stroke="black",
            **{"stroke-width": f"{stroke:.6f}", "data-level": f"{level:.6f}"},
        )
    for point in marks or []:
        ET.SubElement(root, "circle", cx=f"{point.real:.6f}", cy=f"{-point.imag:.6f}", r=f"{3 * stroke:.6f}", fill="red")
    body = ET.tostring(root, encoding="unicode")
    return f"<!-- canard-lab {_version()} -->\n{body}\n"
