#pragma once

#include "beatty/certified_real.hpp"
#include "beatty/congruence_count.hpp"
#include "beatty/continued_fraction.hpp"
#include "beatty/csv.hpp"
#include "beatty/diophantine.hpp"
#include "beatty/errors.hpp"
#include "beatty/exact.hpp"
#include "beatty/experiment.hpp"
#include "beatty/interval_set.hpp"
#include "beatty/parallel.hpp"
#include "beatty/prime_engine.hpp"
#include "beatty/quadratic.hpp"
#include "beatty/sieve_selberg.hpp"

#define BEATTY_VERSION "0.1.0"
