#pragma once

#include "densitykit/errors.hpp"
#include "densitykit/vec.hpp"
#include "densitykit/geometry.hpp"
#include "densitykit/jet.hpp"
#include "densitykit/analytic.hpp"
#include "densitykit/curve.hpp"
#include "densitykit/mesh.hpp"
#include "densitykit/surface.hpp"
#include "densitykit/cone.hpp"
#include "densitykit/monotonicity.hpp"
#include "densitykit/certificates.hpp"
#include "densitykit/catalog.hpp"
#include "densitykit/io.hpp"
