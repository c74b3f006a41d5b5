#pragma once

#include "matchkit/bounds.hpp"
#include "matchkit/capacity.hpp"
#include "matchkit/combinatorics.hpp"
#include "matchkit/entropy.hpp"
#include "matchkit/exact.hpp"
#include "matchkit/graph.hpp"
#include "matchkit/matrix.hpp"
#include "matchkit/oracle.hpp"
#include "matchkit/random_regular.hpp"
#include "matchkit/rational.hpp"
#include "matchkit/spectral.hpp"
#include "matchkit/sturm.hpp"
