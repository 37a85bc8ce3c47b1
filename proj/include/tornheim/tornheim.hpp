#ifndef TORNHEIM_TORNHEIM_HPP
#define TORNHEIM_TORNHEIM_HPP

#include "algebra.hpp"
#include "decomposer.hpp"
#include "evaluator.hpp"
#include "fixtures.hpp"
#include "report.hpp"
#include "summation.hpp"
#include "verifier.hpp"

#endif // TORNHEIM_TORNHEIM_HPP
