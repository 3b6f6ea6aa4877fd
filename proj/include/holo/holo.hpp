#pragma once

#include "holo/calculus.hpp"
#include "holo/eisenstein.hpp"
#include "holo/enumerate.hpp"
#include "holo/errors.hpp"
#include "holo/graph.hpp"
#include "holo/report.hpp"
#include "holo/rings.hpp"
#include "holo/solve.hpp"
#include "holo/treedyn.hpp"
#include "holo/verify.hpp"
