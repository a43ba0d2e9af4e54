#pragma once

#include "mirrorqed/errors.hpp"
#include "mirrorqed/core/blip.hpp"
#include "mirrorqed/core/compensated_sum.hpp"
#include "mirrorqed/core/params.hpp"
#include "mirrorqed/core/piecewise_polynomial.hpp"
#include "mirrorqed/analytic/dyson.hpp"
#include "mirrorqed/analytic/excitation.hpp"
#include "mirrorqed/analytic/longtime.hpp"
#include "mirrorqed/wavepacket/spatial.hpp"
#include "mirrorqed/wavepacket/spectrum.hpp"
#include "mirrorqed/trajectory/config.hpp"
#include "mirrorqed/trajectory/ensemble.hpp"
#include "mirrorqed/trajectory/propagator.hpp"
#include "mirrorqed/trajectory/rng.hpp"
#include "mirrorqed/trajectory/trajectory.hpp"
