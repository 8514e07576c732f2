#pragma once

#include "bihole/bitset.hpp"
#include "bihole/bounds.hpp"
#include "bihole/constructive.hpp"
#include "bihole/exact.hpp"
#include "bihole/generators.hpp"
#include "bihole/graph.hpp"
#include "bihole/harness.hpp"
#include "bihole/io.hpp"
#include "bihole/randomized.hpp"
#include "bihole/rational.hpp"
#include "bihole/rng.hpp"
