#ifndef BGEV_BGEV_HPP
#define BGEV_BGEV_HPP

#include "bgev/analyticity.hpp"
#include "bgev/config.hpp"
#include "bgev/dynamics.hpp"
#include "bgev/errors.hpp"
#include "bgev/evolve.hpp"
#include "bgev/grid_spectral.hpp"
#include "bgev/initial_data.hpp"
#include "bgev/io.hpp"
#include "bgev/norms.hpp"
#include "bgev/pipeline.hpp"
#include "bgev/taylor.hpp"

#endif  // BGEV_BGEV_HPP
