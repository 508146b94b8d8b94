#ifndef LIKEPOWERS_HPP
#define LIKEPOWERS_HPP

#include <likepowers/dense.hpp>
#include <likepowers/errors.hpp>
#include <likepowers/exactpoly.hpp>
#include <likepowers/numerics.hpp>
#include <likepowers/primes.hpp>
#include <likepowers/pseq.hpp>
#include <likepowers/pte.hpp>
#include <likepowers/selection.hpp>
#include <likepowers/sequence.hpp>

#endif
