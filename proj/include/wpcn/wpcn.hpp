#ifndef WPCN_WPCN_HPP
#define WPCN_WPCN_HPP

#include <wpcn/common_solver.hpp>
#include <wpcn/controls.hpp>
#include <wpcn/errors.hpp>
#include <wpcn/model.hpp>
#include <wpcn/roots.hpp>
#include <wpcn/simulation.hpp>
#include <wpcn/sum_solver.hpp>

#endif
