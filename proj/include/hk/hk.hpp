#pragma once

#include <hk/prime_field.hpp>
#include <hk/rational.hpp>
#include <hk/poly.hpp>
#include <hk/poly_parser.hpp>
#include <hk/linalg.hpp>
#include <hk/graded_ring.hpp>
#include <hk/hk_engine.hpp>
#include <hk/monomial_oracle.hpp>
#include <hk/hn_slopes.hpp>
#include <hk/p1_engine.hpp>
#include <hk/reconstruct.hpp>
#include <hk/config.hpp>
#include <hk/acceptance.hpp>
