#ifndef NORMDERIV_NORMDERIV_HPP
#define NORMDERIV_NORMDERIV_HPP

#include "axioms.hpp"
#include "constructions.hpp"
#include "core.hpp"
#include "derivatives.hpp"
#include "geometry.hpp"
#include "line_search.hpp"
#include "maps.hpp"
#include "norms.hpp"
#include "orthogonality.hpp"
#include "sampling.hpp"
#include "smoothness.hpp"

#endif  // NORMDERIV_NORMDERIV_HPP
