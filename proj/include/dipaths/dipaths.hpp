#pragma once

#include "dipaths/acyclic.hpp"
#include "dipaths/assignment.hpp"
#include "dipaths/cycle_family.hpp"
#include "dipaths/decomposer.hpp"
#include "dipaths/digraph.hpp"
#include "dipaths/error.hpp"
#include "dipaths/exact.hpp"
#include "dipaths/graph.hpp"
#include "dipaths/io.hpp"
#include "dipaths/random_regular.hpp"
#include "dipaths/rng.hpp"
#include "dipaths/serialize.hpp"
#include "dipaths/verify.hpp"
