#pragma once

#include "pinball/bounds.hpp"
#include "pinball/dynamics.hpp"
#include "pinball/errors.hpp"
#include "pinball/foldings.hpp"
#include "pinball/geometry.hpp"
#include "pinball/io.hpp"
#include "pinball/lattice.hpp"
#include "pinball/linalg.hpp"
#include "pinball/log_value.hpp"
#include "pinball/quadratic_integer.hpp"
#include "pinball/rigidity.hpp"
#include "pinball/sampling.hpp"
#include "pinball/search.hpp"
#include "pinball/verification.hpp"
