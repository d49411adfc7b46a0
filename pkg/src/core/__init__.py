# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
公共基础设施：版本、异常、配置
"""

__version__ = "0.3.0"
