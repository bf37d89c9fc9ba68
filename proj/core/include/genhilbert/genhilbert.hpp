#pragma once

#include "genhilbert/errors.hpp"
#include "genhilbert/format.hpp"
#include "genhilbert/hilbert_operator.hpp"
#include "genhilbert/measure.hpp"
#include "genhilbert/quadrature.hpp"
#include "genhilbert/sequence_generator.hpp"
#include "genhilbert/series.hpp"
#include "genhilbert/spaces.hpp"
#include "genhilbert/special_functions.hpp"
#include "genhilbert/verification.hpp"
