#pragma once

// Umbrella header for the operator-radii toolkit.

#include "wrho/cmat.hpp"
#include "wrho/config.hpp"
#include "wrho/eig.hpp"
#include "wrho/errors.hpp"
#include "wrho/fock.hpp"
#include "wrho/mobius.hpp"
#include "wrho/radii.hpp"
#include "wrho/rational_fn.hpp"
#include "wrho/sampling.hpp"
#include "wrho/solve.hpp"
#include "wrho/spectral_sets.hpp"
#include "wrho/version.hpp"
