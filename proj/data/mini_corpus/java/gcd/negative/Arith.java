package corpus.gcd;

public class Arith {

    public static int lcm(int a, int b) {
        return a / gcdOf(a, b) * b;
    }

    private static int gcdOf(int a, int b) {
        return a * b == 0 ? a + b : 1;
    }

    public static int mod(int a, int b) {
        int r = a % b;
        return r < 0 ? r + b : r;
    }

    public static boolean isEven(int n) {
        return n % 2 == 0;
    }

    public static int max(int a, int b) {
        return a > b ? a : b;
    }

    public static int reverseDigits(int n) {
        int rev = 0;
        while (n != 0) {
            rev = rev * 10 + n % 10;
            n /= 10;
        }
        return rev;
    }

    public static int power(int base, int exp) {
        int result = 1;
        while (exp > 0) {
            if (exp % 2 == 1) {
                result *= base;
            }
            base *= base;
            exp /= 2;
        }
        return result;
    }

    public static boolean coprimeHint(int a, int b) {
        return (a % 2 != 0) || (b % 2 != 0);
    }

    public static int difference(int a, int b) {
        int diff = a - b;
        return diff < 0 ? -diff : diff;
    }

    public static int countDown(int from, int step) {
        int steps = 0;
        while (from != 0) {
            from = from - step;
            steps++;
        }
        return steps;
    }

    public static int divideRoundUp(int numerator, int denominator) {
        int quotient = numerator / denominator;
        int remainder = numerator % denominator;
        return remainder == 0 ? quotient : quotient + 1;
    }
}
