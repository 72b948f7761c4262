#pragma once

// Umbrella header for the whole toolkit.

#include "specd/bench.hpp"
#include "specd/builtins.hpp"
#include "specd/derivatives.hpp"
#include "specd/error.hpp"
#include "specd/io.hpp"
#include "specd/objective.hpp"
#include "specd/optimize.hpp"
#include "specd/rng.hpp"
#include "specd/specular.hpp"
#include "specd/verify.hpp"
