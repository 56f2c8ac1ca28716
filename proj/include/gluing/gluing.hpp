#pragma once

#include "gluing/adjacency.hpp"
#include "gluing/automaton.hpp"
#include "gluing/automaton_io.hpp"
#include "gluing/builtin.hpp"
#include "gluing/color_graph.hpp"
#include "gluing/disjoint_set.hpp"
#include "gluing/error.hpp"
#include "gluing/expansion.hpp"
#include "gluing/fuzz.hpp"
#include "gluing/graph.hpp"
#include "gluing/oracle.hpp"
#include "gluing/replacement_system.hpp"
#include "gluing/sampling.hpp"
#include "gluing/system_io.hpp"
#include "gluing/upword.hpp"
