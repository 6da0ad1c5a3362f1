#pragma once

#include "gammac/sampling.hpp"
