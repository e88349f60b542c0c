#pragma once

#include "camel/rational.hpp"
#include "camel/desert_model.hpp"
#include "camel/trace_json.hpp"
#include "camel/uwc_strategy.hpp"
#include "camel/camel_function.hpp"
#include "camel/optimality.hpp"
