#pragma once

#include <dichro/graph.hpp>
#include <dichro/quotient.hpp>
#include <dichro/scc.hpp>
#include <dichro/homsearch.hpp>
#include <dichro/twosat.hpp>
#include <dichro/decompose.hpp>
#include <dichro/polymorphism.hpp>
#include <dichro/polysolve.hpp>
#include <dichro/hardness.hpp>
#include <dichro/classify.hpp>
#include <dichro/sandwich.hpp>
#include <dichro/json_io.hpp>
