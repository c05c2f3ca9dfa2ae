#pragma once

// Scattered node generation on irregular 2D/3D domains: spherical-RBF
// boundary models fitted from seed nodes, supersample-and-decimate boundary
// sampling, Poisson disk interior fill inside a PCA-oriented bounding box,
// and local node-set modification for embedded boundaries.

#include "bench.hpp"
#include "boundary.hpp"
#include "embedded.hpp"
#include "errors.hpp"
#include "generator.hpp"
#include "io.hpp"
#include "kdtree.hpp"
#include "linalg.hpp"
#include "metrics.hpp"
#include "nodes.hpp"
#include "obb.hpp"
#include "poisson.hpp"
#include "rng.hpp"
#include "sbf.hpp"
#include "shapes.hpp"
#include "sphere.hpp"
#include "vec.hpp"
