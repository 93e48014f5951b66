"""
单项式、多项式与精确线性代数
"""
