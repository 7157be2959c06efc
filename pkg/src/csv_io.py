#!/usr/bin/env python3
"""
Deployment CSV ingestion and emission, coverage-curve CSV files and JSON reports
"""

import csv
import json
import math
import os
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .analytic import CoverageCurve
from .errors import ConfigError
from .montecarlo import Deployment, DiscBounds, RectBounds

OUTPUT_DIR_ENV = 'STABLE_COVERAGE_OUTPUT_DIR'

EARTH_RADIUS_M = 6371008.8

PLANAR_HEADER = ['x_m', 'y_m']
GEO_HEADER = ['lon', 'lat']
BOUNDS_PREFIX = '# bounds: '


def resolve_output(path: str) -> str:
    """Relative output paths go under $STABLE_COVERAGE_OUTPUT_DIR when it is set"""
    base = os.getenv(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _ensure_parent(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def project_lonlat(lon: np.ndarray, lat: np.ndarray) -> np.ndarray:
    """Local equirectangular projection about the centroid, in meters"""
    lon0, lat0 = np.radians(np.mean(lon)), np.radians(np.mean(lat))
    x = EARTH_RADIUS_M * (np.radians(lon) - lon0) * math.cos(lat0)
    y = EARTH_RADIUS_M * (np.radians(lat) - lat0)
    return np.column_stack([x, y])


def _bounds_to_text(bounds) -> str:
    if isinstance(bounds, DiscBounds):
        return json.dumps({'disc': [bounds.cx, bounds.cy, bounds.radius]})
    return json.dumps({'rect': [bounds.x_min, bounds.y_min, bounds.x_max, bounds.y_max]})


def _bounds_from_text(text: str):
    try:
        spec = json.loads(text)
        if 'disc' in spec:
            return DiscBounds(*map(float, spec['disc']))
        return RectBounds(*map(float, spec['rect']))
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"malformed bounds line: {text!r}") from e


def load_deployment(path: str, geo: bool = False) -> Deployment:
    """
    Read a deployment CSV with header x_m,y_m (or lon,lat when geo is set)

    An optional '# bounds: {...}' line fixes the region; otherwise the
    bounding rectangle of the points is used.
    """
    expected = GEO_HEADER if geo else PLANAR_HEADER
    bounds = None
    rows: List[Tuple[float, float]] = []
    header: Optional[List[str]] = None
    try:
        with open(path, 'r', newline='') as f:
            for line_no, line in enumerate(f, 1):
                line = line.strip()
                if not line:
                    continue
                if line.startswith('#'):
                    if line.startswith(BOUNDS_PREFIX):
                        bounds = _bounds_from_text(line[len(BOUNDS_PREFIX):])
                    continue
                row = next(csv.reader([line]))
                if header is None:
                    header = [cell.strip() for cell in row]
                    if header != expected:
                        raise ConfigError(f"{path}: expected header {','.join(expected)}, got {','.join(header)}")
                    continue
                if len(row) != 2:
                    raise ConfigError(f"{path}:{line_no}: expected 2 columns, got {len(row)}")
                try:
                    rows.append((float(row[0]), float(row[1])))
                except ValueError as e:
                    raise ConfigError(f"{path}:{line_no}: {e}") from e
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e

    if header is None:
        raise ConfigError(f"{path}: missing header {','.join(expected)}")
    if not rows:
        raise ConfigError(f"{path}: no deployment rows")
    coords = np.array(rows, dtype=float)
    if geo:
        coords = project_lonlat(coords[:, 0], coords[:, 1])
        bounds = None
    return Deployment.from_points(coords, bounds)


def save_deployment(dep: Deployment, path: str):
    _ensure_parent(path)
    with open(path, 'w', newline='') as f:
        f.write(BOUNDS_PREFIX + _bounds_to_text(dep.bounds) + '\n')
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(PLANAR_HEADER)
        for x, y in dep.points:
            writer.writerow([repr(float(x)), repr(float(y))])


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serialisable: {type(value).__name__}")


def write_curve(curve: CoverageCurve, path: str):
    """t_db,p_c rows at full precision after '# meta:' and '# units:' lines"""
    _ensure_parent(path)
    with open(path, 'w', newline='') as f:
        f.write('# meta: ' + json.dumps(curve.meta, sort_keys=True, default=_json_default) + '\n')
        f.write('# units: t_db=dB p_c=probability\n')
        f.write('t_db,p_c\n')
        for t_db, p_c in curve.points:
            f.write(f"{t_db!r},{p_c!r}\n")


def read_curve(path: str) -> CoverageCurve:
    meta: Dict[str, Any] = {}
    points = []
    with open(path, 'r') as f:
        for line in f:
            line = line.strip()
            if line.startswith('# meta: '):
                meta = json.loads(line[len('# meta: '):])
            elif line and not line.startswith('#') and line != 't_db,p_c':
                t_db, p_c = line.split(',')
                points.append((float(t_db), float(p_c)))
    return CoverageCurve(points=points, meta=meta)


def write_json(report: Dict[str, Any], path: str):
    _ensure_parent(path)
    with open(path, 'w') as f:
        json.dump(report, f, indent=2, sort_keys=True, default=_json_default)
        f.write('\n')
