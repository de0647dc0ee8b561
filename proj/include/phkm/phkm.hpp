#pragma once

// Umbrella header for the phkm library: persistent homology of point clouds
// and metric k-means clustering of the resulting persistence diagrams,
// persistence measures, and vector embeddings.

#include "phkm/assignment.hpp"
#include "phkm/clustering.hpp"
#include "phkm/embeddings.hpp"
#include "phkm/evaluation.hpp"
#include "phkm/experiment.hpp"
#include "phkm/filtration.hpp"
#include "phkm/io.hpp"
#include "phkm/means.hpp"
#include "phkm/measure.hpp"
#include "phkm/mesh.hpp"
#include "phkm/metrics.hpp"
#include "phkm/parallel.hpp"
#include "phkm/persistence.hpp"
#include "phkm/point_cloud.hpp"
#include "phkm/random.hpp"
#include "phkm/shapes.hpp"
#include "phkm/svg.hpp"
#include "phkm/transport.hpp"
