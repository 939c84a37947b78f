"""Common constants used in the library."""
import numpy as np

#: Elementwise tolerance for R^T R = I and det(R) = +1
ORTHONORMAL_TOL = 1e-9

#: The unit vector of the tunnel axis in the world frame
WORLD_AXIS = np.array([0.0, 1.0, 0.0])
WORLD_AXIS.flags.writeable = False

#: The default direction the light travels in for lambertian shading.
#: The tunnel axis is horizontal, theta=0 (+z) is the floor, so "down" is +z.
DOWN_LIGHT_DIRECTION = (0.0, 0.0, 1.0)

#: The allowed texture kinds
TEXTURE_KINDS = ("checkerboard", "brick", "solid")
#: The allowed shading modes
SHADING_MODES = ("unlit", "lambertian-downward")
#: The allowed trajectory modes
TRAJECTORY_MODES = ("stationary", "spiral")
#: The allowed stitching modes
STITCH_MODES = ("corrected", "egocentric", "baseline")
#: The allowed resampling methods of the inverse warp
INTERPOLATIONS = ("bilinear", "nearest")

#: Number of samples per image edge used to trace the forward warped boundary
BOUNDARY_SAMPLES_PER_EDGE = 32

#: Largest allowed turn between two consecutive spans of a tunnel curve in deg
MAX_SPAN_TURN_DEG = 170.0

#: First line of every trajectory file
TRAJECTORY_HEADER = "tunnelstitch-trajectory v1"
#: Separator between the ground truth and the planned pose in a trajectory file line
PLANNED_POSE_SEPARATOR = "|"

#: Name pattern of the frames of a simulated dataset
FRAME_NAME_PATTERN = "frame_{:05d}.ppm"
#: Name pattern of the valid pixel mask of a frame. Only written if some pixels do not show the tunnel wall.
VALID_MASK_NAME_PATTERN = "frame_{:05d}_valid.pgm"
#: Name of the trajectory file of a simulated dataset
TRAJECTORY_FILE_NAME = "trajectory.txt"
#: Name of the frozen config of a simulated dataset
CONFIG_SNAPSHOT_NAME = "config.cfg"

#: Environment variable that overwrites the default output root of the command line interface
OUTPUT_ROOT_ENV = "TUNNELSTITCH_OUTPUT_ROOT"
