#pragma once

#include "builders.hpp"
#include "intset.hpp"
#include "repfn.hpp"
#include "solver.hpp"
#include "verify.hpp"
