#pragma once

// Umbrella header for the atom-optics kicked rotor toolkit.

#include "aokr/analytic.hpp"
#include "aokr/bessel.hpp"
#include "aokr/classical_map.hpp"
#include "aokr/ensemble.hpp"
#include "aokr/errors.hpp"
#include "aokr/fft.hpp"
#include "aokr/numerics.hpp"
#include "aokr/parallel.hpp"
#include "aokr/params.hpp"
#include "aokr/quantum_delta.hpp"
#include "aokr/quantum_pulse.hpp"
#include "aokr/quantum_state.hpp"
#include "aokr/rng.hpp"
#include "aokr/sweep.hpp"
