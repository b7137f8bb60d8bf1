#pragma once

#include "ngas/errors.hpp"
#include "ngas/gap.hpp"
#include "ngas/harmonic.hpp"
#include "ngas/mfpt.hpp"
#include "ngas/model.hpp"
#include "ngas/numeric.hpp"
#include "ngas/oracle.hpp"
#include "ngas/phi4.hpp"
#include "ngas/resum.hpp"
#include "ngas/squarewell.hpp"
#include "ngas/surd.hpp"
