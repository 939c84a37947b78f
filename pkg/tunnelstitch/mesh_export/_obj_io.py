"""Wavefront OBJ/MTL output of tunnel meshes."""
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from tunnelstitch.mesh_export._mesh import TunnelMesh
from tunnelstitch.utils.exceptions import ParseError
from tunnelstitch.utils.image_io import write_image

PathLike = Union[str, Path]


def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def write_mesh(mesh: TunnelMesh, panorama_image: np.ndarray, output_prefix: PathLike) -> Tuple[Path, Path, Path]:
    """Write a mesh as OBJ geometry, MTL material and PNG texture.

    The three files are `<prefix>.obj`, `<prefix>.mtl` and `<prefix>.png`.
    The material references the texture by its file name, so the files can be moved together.
    The texture is the panorama flipped upside down, because OBJ texture coordinates start at the bottom of an image
    while panorama rows start at the lowest height.

    Parameters
    ----------
    mesh
        The mesh to write
    panorama_image
        The float RGB panorama with shape (height, width, 3)
    output_prefix
        Path without extension. The directory must exist.

    Returns
    -------
    paths
        The geometry, material and texture path

    """
    mesh.validate()
    prefix = Path(output_prefix)
    if not prefix.parent.is_dir():
        raise FileNotFoundError(f"The output directory {prefix.parent} does not exist.")
    obj_path = prefix.with_name(prefix.name + ".obj")
    mtl_path = prefix.with_name(prefix.name + ".mtl")
    png_path = prefix.with_name(prefix.name + ".png")

    write_image(np.ascontiguousarray(panorama_image[::-1]), png_path)

    mtl_lines = [
        f"newmtl {mesh.material_name}",
        "Ka 1.0 1.0 1.0",
        "Kd 1.0 1.0 1.0",
        "Ks 0.0 0.0 0.0",
        "illum 1",
        f"map_Kd {png_path.name}",
    ]
    mtl_path.write_text("\n".join(mtl_lines) + "\n", encoding="utf-8")

    lines = ["# tunnelstitch tunnel mesh", f"# vertices: {len(mesh.vertices)}", f"# faces: {len(mesh.faces)}"]
    if mesh.comment:
        lines.append(f"# {mesh.comment}")
    lines += [f"mtllib {mtl_path.name}", "o tunnel", f"usemtl {mesh.material_name}"]
    lines += [f"v {_fmt(v)}" for v in mesh.vertices]
    lines += [f"vt {_fmt(t)}" for t in mesh.uv]
    lines += [f"vn {_fmt(n)}" for n in mesh.normals]
    # Vertices, texture coordinates and normals share one index
    lines += ["f " + " ".join(f"{i}/{i}/{i}" for i in face + 1) for face in mesh.faces]
    obj_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return obj_path, mtl_path, png_path


def _parse_face_vertex(token: str, path: Path, line_number: int) -> int:
    indices = token.split("/")
    try:
        parsed = {int(i) for i in indices if i}
    except ValueError as e:
        raise ParseError(f"Invalid face index '{token}'.", path, line_number) from e
    if len(parsed) != 1:
        raise ParseError(f"Only shared vertex/uv/normal indices are supported. Got '{token}'.", path, line_number)
    return parsed.pop() - 1


def read_obj(path: PathLike) -> TunnelMesh:
    """Read a triangle mesh written by :func:`~tunnelstitch.mesh_export.write_mesh`.

    Only `v`, `vt`, `vn`, `f` and `usemtl` statements are interpreted; comments are collected.
    """
    path = Path(path)
    vertices, uv, normals, faces, comments = [], [], [], [], []
    material_name = ""
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        key, values = tokens[0], tokens[1:]
        try:
            if key == "v":
                vertices.append([float(v) for v in values[:3]])
            elif key == "vt":
                uv.append([float(v) for v in values[:2]])
            elif key == "vn":
                normals.append([float(v) for v in values[:3]])
        except ValueError as e:
            raise ParseError(f"Invalid number: {e}", path, line_number) from e
        if key == "f":
            if len(values) != 3:
                raise ParseError(f"Only triangles are supported. Got {len(values)} vertices.", path, line_number)
            faces.append([_parse_face_vertex(t, path, line_number) for t in values])
        elif key == "usemtl" and values:
            material_name = values[0]
        elif key == "#" or line.startswith("#"):
            comments.append(line.lstrip("# ").rstrip())
    mesh = TunnelMesh(
        np.array(vertices, dtype=float).reshape(-1, 3),
        np.array(uv, dtype=float).reshape(-1, 2),
        np.array(normals, dtype=float).reshape(-1, 3),
        np.array(faces, dtype=int).reshape(-1, 3),
        material_name=material_name,
        comment="\n".join(comments),
    )
    return mesh
