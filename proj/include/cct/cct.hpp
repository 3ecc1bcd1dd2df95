#pragma once

// Umbrella header: exact all-k-nearest-neighbors on compressed cover trees.

#include "cct/analysis.hpp"
#include "cct/core.hpp"
#include "cct/descendant_cache.hpp"
#include "cct/euclidean.hpp"
#include "cct/generators.hpp"
#include "cct/io.hpp"
#include "cct/knn.hpp"
#include "cct/legacy.hpp"
#include "cct/metric.hpp"
#include "cct/trainline.hpp"
#include "cct/traversal.hpp"
#include "cct/tree.hpp"
