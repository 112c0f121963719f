#pragma once

#include "umedest/asymptotics.hpp"
#include "umedest/contamination.hpp"
#include "umedest/distribution.hpp"
#include "umedest/errors.hpp"
#include "umedest/estimator.hpp"
#include "umedest/family.hpp"
#include "umedest/format.hpp"
#include "umedest/montecarlo.hpp"
#include "umedest/sampling.hpp"
#include "umedest/umedian.hpp"
