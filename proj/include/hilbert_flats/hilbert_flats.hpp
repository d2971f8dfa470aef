#pragma once

// Everything except the command-line layer.

#include "hilbert_flats/builders.hpp"
#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/flat_torus.hpp"
#include "hilbert_flats/group_action.hpp"
#include "hilbert_flats/hilbert_metric.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"
#include "hilbert_flats/properties.hpp"
#include "hilbert_flats/simplex_geometry.hpp"
