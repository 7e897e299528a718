#pragma once

#include "algebra.hpp"
#include "dsl.hpp"
#include "error.hpp"
#include "graph_model.hpp"
#include "invariants.hpp"
#include "report.hpp"
#include "socle.hpp"
#include "structure.hpp"
