#pragma once

#include "certificate.hpp"
#include "cone.hpp"
#include "convexity.hpp"
#include "heisenberg.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "projective.hpp"
#include "rational.hpp"
#include "representation.hpp"
#include "restriction.hpp"
#include "sampler.hpp"
#include "simplex.hpp"
#include "suite.hpp"
