// Umbrella header.

#pragma once

#include "vague/checks.hpp"
#include "vague/lu.hpp"
#include "vague/prob.hpp"
#include "vague/rational.hpp"
#include "vague/report.hpp"
#include "vague/rsa.hpp"
#include "vague/scenario.hpp"
#include "vague/semantics.hpp"
#include "vague/variants.hpp"
