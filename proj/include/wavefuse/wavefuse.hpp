#pragma once

#include "wavefuse/blur.hpp"
#include "wavefuse/color.hpp"
#include "wavefuse/error.hpp"
#include "wavefuse/filters.hpp"
#include "wavefuse/fusion.hpp"
#include "wavefuse/image.hpp"
#include "wavefuse/metrics.hpp"
#include "wavefuse/pnm.hpp"
#include "wavefuse/transform.hpp"
