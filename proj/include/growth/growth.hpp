// Umbrella header.
#ifndef GROWTH_GROWTH_HPP
#define GROWTH_GROWTH_HPP

#include "alphabet.hpp"
#include "automaton.hpp"
#include "covers.hpp"
#include "errors.hpp"
#include "extension.hpp"
#include "freegroup.hpp"
#include "json_io.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "scc.hpp"
#include "spectral.hpp"
#include "stallings.hpp"

#endif  // GROWTH_GROWTH_HPP
