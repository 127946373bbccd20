#pragma once

#include "specwave/core.hpp"
#include "specwave/csv.hpp"
#include "specwave/diagnostics.hpp"
#include "specwave/errors.hpp"
#include "specwave/fft.hpp"
#include "specwave/recovery.hpp"
#include "specwave/testsignals.hpp"
#include "specwave/touchstone.hpp"
#include "specwave/wavelet.hpp"
