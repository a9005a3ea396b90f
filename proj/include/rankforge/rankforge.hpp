#ifndef RANKFORGE_RANKFORGE_HPP
#define RANKFORGE_RANKFORGE_HPP

#include "rankforge/analysis.hpp"
#include "rankforge/dataset.hpp"
#include "rankforge/errors.hpp"
#include "rankforge/fieldsim.hpp"
#include "rankforge/rank.hpp"
#include "rankforge/rational.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/score_function.hpp"
#include "rankforge/scoring.hpp"
#include "rankforge/standings.hpp"
#include "rankforge/tables.hpp"
#include "rankforge/tiebreak.hpp"

#endif
