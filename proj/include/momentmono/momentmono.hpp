#pragma once

#include "momentmono/distributions.hpp"
#include "momentmono/estimation.hpp"
#include "momentmono/ratio.hpp"
#include "momentmono/specfn.hpp"
#include "momentmono/verification.hpp"
