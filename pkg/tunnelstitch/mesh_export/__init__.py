"""UV mapped tunnel meshes textured with a stitched panorama."""

from tunnelstitch.mesh_export._mesh import (
    CURVED_TUNNEL_NOTE,
    TunnelCurve,
    TunnelMesh,
    build_curved_mesh,
    build_straight_mesh,
    load_curve,
)
from tunnelstitch.mesh_export._obj_io import read_obj, write_mesh

__all__ = [
    "CURVED_TUNNEL_NOTE",
    "TunnelCurve",
    "TunnelMesh",
    "build_curved_mesh",
    "build_straight_mesh",
    "load_curve",
    "read_obj",
    "write_mesh",
]
