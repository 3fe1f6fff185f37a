#pragma once

// Umbrella header for the cyber insurance audit game library.

#include "ciag/cli.hpp"
#include "ciag/csv.hpp"
#include "ciag/equilibrium.hpp"
#include "ciag/errors.hpp"
#include "ciag/game_tree.hpp"
#include "ciag/money.hpp"
#include "ciag/montecarlo.hpp"
#include "ciag/oracle.hpp"
#include "ciag/params.hpp"
#include "ciag/report.hpp"
#include "ciag/rng.hpp"
#include "ciag/scenario.hpp"
#include "ciag/utility.hpp"
